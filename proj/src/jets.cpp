#include "jetcalc/jets.hpp"

#include <stdexcept>

#include "jetcalc/errors.hpp"

namespace jetcalc::jets {
namespace {

// D applied to a single symbol.
Polynomial derivative_of_symbol(SymbolId s) {
    const SymbolInfo& info = s.info();
    const SymbolId p1 = jetcalc::jet(1, true);
    switch (info.kind) {
    case SymbolKind::MapDerivative:
        if (info.i + info.j >= kMaxPhiOrder)
            throw MaxOrderExceeded("D(" + info.name + ") needs map derivatives of order " +
                                   std::to_string(info.i + info.j + 1) + " > " + std::to_string(kMaxPhiOrder));
        return Polynomial::variable(map_derivative(info.component, info.i + 1, info.j)) +
               Polynomial::variable(p1) * Polynomial::variable(map_derivative(info.component, info.i, info.j + 1));
    case SymbolKind::Jet:
        if (!info.tilde)
            throw NonDifferentiableSymbol("source jet " + info.name + " is not a function of the tilde variables");
        if (info.order >= 3) throw MaxOrderExceeded("D(" + info.name + ") exceeds the third-order jet space");
        return Polynomial::variable(jetcalc::jet(info.order + 1, true));
    case SymbolKind::Coefficient:
        throw NonDifferentiableSymbol("opaque composed coefficient " + info.name + " is never differentiated");
    case SymbolKind::Variable:
        if (info.name == "x" || info.name == "y") {
            const char c = info.name[0];
            return Polynomial::variable(map_derivative(c, 1, 0)) +
                   Polynomial::variable(p1) * Polynomial::variable(map_derivative(c, 0, 1));
        }
        if (info.name == "xt") return Polynomial(1);
        if (info.name == "yt") return Polynomial::variable(p1);
        throw NonDifferentiableSymbol("no total-derivative rule for '" + info.name + "'");
    }
    throw std::logic_error("unreachable");
}

} // namespace

std::vector<SymbolId> JetContext::phi_symbols() {
    std::vector<SymbolId> out;
    for (char c : {'x', 'y'})
        for (int i = 0; i <= max_phi_order; ++i)
            for (int j = 0; i + j <= max_phi_order; ++j)
                if (i + j > 0) out.push_back(map_derivative(c, i, j));
    return out;
}

std::array<SymbolId, 4> JetContext::direct_jacobian() {
    return {variable("xt_1_0"), variable("xt_0_1"), variable("yt_1_0"), variable("yt_0_1")};
}

RationalExpr phi(char component, int i, int j) { return RationalExpr::symbol(map_derivative(component, i, j)); }

RationalExpr jacobian_determinant() { return phi('x', 1, 0) * phi('y', 0, 1) - phi('x', 0, 1) * phi('y', 1, 0); }

RationalExpr total_derivative_of_x() { return total_derivative(RationalExpr::symbol(variable("x"))); }

Polynomial total_derivative(const Polynomial& p) {
    std::vector<Term> acc;
    for (const auto& t : p.terms()) {
        for (const auto& [s, e] : t.mono.factors()) {
            Monomial rest = t.mono.without(s) * Monomial(s, e - 1);
            Polynomial d = derivative_of_symbol(s).times_monomial(rest, t.coeff * e);
            acc.insert(acc.end(), d.terms().begin(), d.terms().end());
        }
    }
    return Polynomial::from_terms(std::move(acc));
}

RationalExpr total_derivative(const RationalExpr& e) {
    if (e.is_polynomial()) return RationalExpr(total_derivative(e.num()));
    // (n/d)' = (n' d - n d') / d^2
    Polynomial n1 = total_derivative(e.num());
    Polynomial d1 = total_derivative(e.den());
    return RationalExpr::fraction(n1 * e.den() - e.num() * d1, e.den() * e.den());
}

Prolongation prolong(int order) {
    if (order < 1 || order > 3) throw MaxOrderExceeded("prolongation order must be 1, 2 or 3");
    const RationalExpr dx = total_derivative_of_x();
    Prolongation p;
    p.order = order;
    p.yp = total_derivative(RationalExpr::symbol(variable("y"))) / dx;
    if (order >= 2) p.ypp = total_derivative(p.yp) / dx;
    if (order >= 3) p.yppp = total_derivative(p.ypp) / dx;
    return p;
}

const Prolongation& third_order_prolongation() {
    static const Prolongation p = prolong(3);
    return p;
}

Monomial CoefficientTable::slot_monomial(int index1) {
    const SymbolId p = JetContext::jet(1), q = JetContext::jet(2), r = JetContext::jet(3);
    switch (index1) {
    case 1: return Monomial(r);
    case 2: return Monomial(q, 2);
    case 3: return Monomial(q) * Monomial(p, 2);
    case 4: return Monomial(q) * Monomial(p);
    case 5: return Monomial(q);
    case 6: return Monomial(p, 5);
    case 7: return Monomial(p, 4);
    case 8: return Monomial(p, 3);
    case 9: return Monomial(p, 2);
    case 10: return Monomial(p);
    case 11: return Monomial();
    default: throw std::out_of_range("coefficient slots are numbered 1..11");
    }
}

RationalExpr CoefficientTable::reconstruct_yppp() const {
    RationalExpr sum;
    for (int i = 1; i <= 11; ++i) sum += (*this)[i] * RationalExpr(Polynomial::monomial(slot_monomial(i)));
    return sum / total_derivative_of_x().pow(5);
}

CoefficientTable extract_coefficients(const Prolongation& p) {
    if (p.order != 3) throw std::invalid_argument("extract_coefficients needs a third-order prolongation");
    const SymbolId p1 = JetContext::jet(1), p2 = JetContext::jet(2), p3 = JetContext::jet(3);
    RationalExpr cleared = p.yppp * total_derivative_of_x().pow(5);
    const SymbolId vars[] = {p1, p2, p3};
    Collected groups = collect(cleared, vars);

    CoefficientTable table;
    const Monomial y1y3 = Monomial(p1) * Monomial(p3);
    for (auto& [key, value] : groups) {
        if (key == y1y3) {
            table[1] += value * RationalExpr::symbol(p1);
            continue;
        }
        bool placed = false;
        for (int i = 1; i <= 11 && !placed; ++i) {
            if (key == CoefficientTable::slot_monomial(i)) {
                table[i] += value;
                placed = true;
            }
        }
        if (!placed)
            throw StructureViolation("jet monomial " + key.to_string() + " lies outside the eleven coefficient slots");
    }
    return table;
}

const CoefficientTable& derived_coefficients() {
    static const CoefficientTable t = extract_coefficients(third_order_prolongation());
    return t;
}

} // namespace jetcalc::jets
