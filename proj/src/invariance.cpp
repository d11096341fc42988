#include "jetcalc/invariance.hpp"

#include "jetcalc/claims.hpp"
#include "jetcalc/jets.hpp"

namespace jetcalc::invariance {
namespace {

RationalExpr sym(SymbolId s) { return RationalExpr::symbol(s); }
RationalExpr coeff(std::string_view n) { return sym(coefficient(n)); }

Bindings map_bindings(const MapSpec& map) {
    if (std::holds_alternative<GeneralMap>(map)) return {};
    const auto& m = std::get<ConcreteMap>(map);
    if (m.jacobian_determinant().is_zero()) throw DegenerateMap("det S vanishes identically");
    if (m.base && sgn(m.jacobian_determinant_at(*m.base)) == 0)
        throw DegenerateMap("det S vanishes at the basepoint (" + m.base->first.get_str() + ", " +
                            m.base->second.get_str() + ")");
    return m.symbolic_bindings();
}

RationalExpr specialize(const RationalExpr& e, const Bindings& b) { return b.empty() ? e : substitute(e, b); }

void require_source_form(const RationalExpr& f, int max_jet) {
    for (auto s : f.variables()) {
        const auto& info = s.info();
        if (info.kind == SymbolKind::Jet && (info.tilde || info.order > max_jet))
            throw DomainError("the right-hand side may not involve '" + info.name + "'");
        if (info.kind == SymbolKind::MapDerivative || info.name == "xt" || info.name == "yt")
            throw DomainError("the right-hand side may not involve '" + info.name + "'");
    }
}

// y'' D^3 = alpha q + beta for the second-order rule.
struct SecondOrderRule {
    RationalExpr alpha, beta;
};

const SecondOrderRule& second_order_rule() {
    static const SecondOrderRule rule = [] {
        const auto pr = jets::prolong(2);
        RationalExpr cleared = pr.ypp * jets::total_derivative_of_x().pow(3);
        const SymbolId q[] = {jet(2, true)};
        auto parts = collect(cleared, q);
        SecondOrderRule r;
        for (auto& [mono, value] : parts) {
            if (mono.is_unit()) r.beta = value;
            else if (mono == Monomial(q[0])) r.alpha = value;
            else throw StructureViolation("y'' is not linear in yt2");
        }
        return r;
    }();
    return rule;
}

// Allowed numerator monomials of the third-order class, in coefficient order.
struct Slot {
    OdeClassCoeffs::Index index;
    Monomial mono;
};

std::vector<Slot> third_order_slots(SymbolId p, SymbolId q) {
    using I = OdeClassCoeffs;
    return {{I::B, Monomial(q, 2)},        {I::P, Monomial(q) * Monomial(p, 2)}, {I::Q, Monomial(q) * Monomial(p)},
            {I::R, Monomial(q)},           {I::S, Monomial(p, 5)},               {I::L, Monomial(p, 4)},
            {I::K, Monomial(p, 3)},        {I::M, Monomial(p, 2)},               {I::N, Monomial(p)},
            {I::T, Monomial()}};
}

// Content of a polynomial with respect to p and its primitive part.
std::pair<Polynomial, Polynomial> split_content(const Polynomial& d, SymbolId p) {
    auto coeffs = d.as_univariate(p);
    Polynomial content = gcd(std::span<const Polynomial>(coeffs));
    return {content, *divide_exact(d, content)};
}

// Sum of the terms of `num` whose degree in q equals k.
Polynomial q_slice(const Polynomial& num, SymbolId q, std::uint32_t k) {
    auto parts = num.as_univariate(q);
    if (k >= parts.size()) return {};
    return parts[k];
}

void residue_analysis(MembershipResult& r, const RationalExpr& g, const Polynomial& content, const Polynomial& prim,
                      SymbolId p, SymbolId q) {
    // The prolongation's own denominator x_1_0 + x_0_1 p is the expected
    // spurious factor; otherwise the class factor is read off a slice whose
    // reduced denominator is already linear in p.
    std::optional<Polynomial> ell;
    const Polynomial dx = Polynomial::variable(map_derivative('x', 1, 0)) +
                          Polynomial::variable(map_derivative('x', 0, 1)) * Polynomial::variable(p);
    if (auto rest = divide_exact(prim, dx); rest && rest->degree(p) == 1) ell = *rest;
    for (std::uint32_t k : {0u, 1u}) {
        if (ell) break;
        Polynomial slice = q_slice(g.num(), q, k);
        if (slice.is_zero()) continue;
        RationalExpr s = RationalExpr::fraction(slice, g.den());
        auto [c, pp] = split_content(s.den(), p);
        if (pp.degree(p) == 1) {
            ell = pp;
            break;
        }
    }
    if (!ell) return;
    auto m = divide_exact(prim, *ell);
    if (!m || m->degree(p) != 1) return;
    RationalExpr f = RationalExpr::fraction(q_slice(g.num(), q, 2), content * *m);
    r.residue = residue_simple_pole(f, p);
    r.pole_factor = RationalExpr(*m);
    r.obstructions.push_back("the yt2^2 coefficient has a pole at the root of " + m->to_string() +
                             " with residue " + r.residue->to_string());
}

nlohmann::json laws_json(const std::vector<CoefficientLaw>& laws) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& l : laws) j[l.name] = l.value.to_string();
    return j;
}

const char* kDerivedProvenance = "derived by this engine; the source states closure without transformed laws";

} // namespace

// -------------------------------------------------------------- transforms

RationalExpr transform_equation(const RationalExpr& f, const MapSpec& map) {
    require_source_form(f, 2);
    const Bindings mb = map_bindings(map);
    const auto& pr = jets::third_order_prolongation();
    const auto& table = jets::derived_coefficients();
    const RationalExpr a1 = specialize(table[1], mb);
    if (a1.is_zero()) throw DegenerateMap("the coefficient of yt3 vanishes identically");
    const RationalExpr dx = specialize(jets::total_derivative_of_x(), mb);

    Bindings fb = mb;
    fb[jet(1, false)] = specialize(pr.yp, mb);
    fb[jet(2, false)] = specialize(pr.ypp, mb);
    const RationalExpr fhat = substitute(f, fb);

    RationalExpr rest;
    for (int i = 2; i <= 11; ++i)
        rest += specialize(table[i], mb) * RationalExpr(Polynomial::monomial(jets::CoefficientTable::slot_monomial(i)));
    return (fhat * dx.pow(5) - rest) / a1;
}

RationalExpr transform_second_order(const RationalExpr& f, const MapSpec& map) {
    require_source_form(f, 1);
    const Bindings mb = map_bindings(map);
    const auto& rule = second_order_rule();
    const RationalExpr alpha = specialize(rule.alpha, mb);
    if (alpha.is_zero()) throw DegenerateMap("the coefficient of yt2 vanishes identically");
    const RationalExpr dx = specialize(jets::total_derivative_of_x(), mb);
    Bindings fb = mb;
    fb[jet(1, false)] = specialize(jets::third_order_prolongation().yp, mb);
    const RationalExpr fhat = substitute(f, fb);
    return (fhat * dx.pow(3) - specialize(rule.beta, mb)) / alpha;
}

RationalExpr to_target_names(const RationalExpr& e) {
    Bindings b{{variable("x"), sym(variable("xt"))}, {variable("y"), sym(variable("yt"))}};
    for (int k = 1; k <= 3; ++k) b[jet(k, false)] = sym(jet(k, true));
    return substitute(e, b);
}

RationalExpr to_source_names(const RationalExpr& e) {
    Bindings b{{variable("xt"), sym(variable("x"))}, {variable("yt"), sym(variable("y"))}};
    for (int k = 1; k <= 3; ++k) b[jet(k, true)] = sym(jet(k, false));
    return substitute(e, b);
}

// ------------------------------------------------------------- membership

nlohmann::json MembershipResult::to_json() const {
    nlohmann::json j{{"in_class", in_class}, {"obstructions", obstructions}, {"offending_terms", offending_terms}};
    if (coeffs) {
        nlohmann::json c = nlohmann::json::object();
        for (std::size_t i = 0; i < OdeClassCoeffs::kCount; ++i) {
            auto idx = static_cast<OdeClassCoeffs::Index>(i);
            c[std::string(OdeClassCoeffs::name(idx))] = coeffs->effective(idx).to_string();
        }
        j["coefficients"] = c;
    }
    if (residue) j["residue"] = residue->to_string();
    if (pole_factor) j["pole_factor"] = pole_factor->to_string();
    return j;
}

MembershipResult class_membership(const RationalExpr& g, const JetVars& jets, bool require_tied) {
    using I = OdeClassCoeffs;
    MembershipResult r;
    const SymbolId p = jets.first, q = jets.second;
    if (g.depends_on(jets.third)) {
        r.obstructions.push_back("depends on " + jets.third.name());
        return r;
    }
    if (g.den().depends_on(q)) {
        r.obstructions.push_back("denominator involves " + q.name());
        return r;
    }
    auto [content, prim] = split_content(g.den(), p);

    const auto slots = third_order_slots(p, q);
    const SymbolId vars[] = {p, q};
    Collected parts = collect(RationalExpr(g.num()), vars);
    if (auto dq = g.num().degree(q); dq > 2)
        r.obstructions.push_back(q.name() + "-degree " + std::to_string(dq) + " exceeds 2");
    std::map<I::Index, Polynomial> found;
    for (const auto& [mono, value] : parts) {
        auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.mono == mono; });
        if (it == slots.end()) r.offending_terms.push_back(mono.to_string());
        else found[it->index] = value.num();
    }
    if (!r.offending_terms.empty()) r.obstructions.push_back("numerator has jet monomials outside the class support");

    if (auto dp = prim.degree(p); dp > 1) {
        r.obstructions.push_back("reduced denominator has degree " + std::to_string(dp) + " in " + p.name() +
                                 " after removing content");
        residue_analysis(r, g, content, prim, p, q);
    }
    if (!r.obstructions.empty()) return r;

    OdeClassCoeffs c;
    for (const auto& s : slots) {
        auto it = found.find(s.index);
        c[s.index] = it == found.end() ? RationalExpr() : RationalExpr::fraction(it->second, content);
    }
    auto pc = prim.as_univariate(p);
    c[I::Y] = RationalExpr(pc[0]);
    c[I::X] = pc.size() > 1 ? RationalExpr(-pc[1]) : RationalExpr();
    if (require_tied) {
        RationalExpr defect = c[I::B] + 3 * c[I::X];
        if (!defect.is_zero()) {
            r.obstructions.push_back("B + 3X = " + defect.to_string() + " is not zero");
            return r;
        }
        c.set_tied_b(true);
    }
    r.coeffs = c.gauge_canonical();
    r.in_class = true;
    return r;
}

SecondOrderMembership cubic_membership(const RationalExpr& g, const JetVars& jets) {
    SecondOrderMembership r;
    r.names = {"P", "Q", "R", "S"};
    const SymbolId p = jets.first;
    if (g.depends_on(jets.second) || g.depends_on(jets.third)) {
        r.obstructions.push_back("depends on a jet of order above 1");
        return r;
    }
    if (g.den().depends_on(p)) {
        r.obstructions.push_back("denominator involves " + p.name());
        return r;
    }
    auto parts = g.num().as_univariate(p);
    if (parts.size() > 4) {
        r.obstructions.push_back(p.name() + "-degree " + std::to_string(parts.size() - 1) + " exceeds 3");
        return r;
    }
    parts.resize(4);
    const long scale[] = {1, 3, 3, 1};
    for (std::size_t k = 0; k < 4; ++k)
        r.coeffs.push_back(RationalExpr::fraction(parts[k], g.den().scaled(scale[k])));
    r.in_class = true;
    return r;
}

SecondOrderMembership point_expansion_membership(const RationalExpr& g, const JetVars& jets) {
    SecondOrderMembership r;
    r.names = {"P", "Q", "R", "S", "L", "X", "Y"};
    const SymbolId p = jets.first;
    if (g.depends_on(jets.second) || g.depends_on(jets.third)) {
        r.obstructions.push_back("depends on a jet of order above 1");
        return r;
    }
    auto [content, prim] = split_content(g.den(), p);
    if (prim.degree(p) > 1) {
        r.obstructions.push_back("reduced denominator has degree " + std::to_string(prim.degree(p)) + " in " +
                                 p.name());
        return r;
    }
    auto parts = g.num().as_univariate(p);
    if (parts.size() > 5) {
        r.obstructions.push_back(p.name() + "-degree " + std::to_string(parts.size() - 1) + " exceeds 4");
        return r;
    }
    parts.resize(5);
    const long scale[] = {1, 4, 6, 4, 1};
    std::vector<RationalExpr> entries;
    for (std::size_t k = 0; k < 5; ++k) entries.push_back(RationalExpr::fraction(parts[k], content.scaled(scale[k])));
    auto pc = prim.as_univariate(p);
    entries.push_back(pc.size() > 1 ? RationalExpr(-pc[1]) : RationalExpr());
    entries.emplace_back(pc[0]);
    r.coeffs = gauge_normalize(entries).first;
    r.in_class = true;
    return r;
}

// -------------------------------------------------------------- residue

ResidueObstruction residue_obstruction() {
    const RationalExpr B = coeff("B"), X = coeff("X"), Y = coeff("Y");
    const SymbolId y1 = jet(1, false), y2 = jet(2, false);
    const SymbolId p = jet(1, true), q = jet(2, true);
    RationalExpr g = transform_equation(B * sym(y2).pow(2) / (Y - X * sym(y1)), GeneralMap{});

    const RationalExpr dx = jets::total_derivative_of_x();
    const RationalExpr linear = (Y - X * jets::third_order_prolongation().yp) * dx;
    RationalExpr h = RationalExpr::fraction(q_slice(g.num(), q, 2), g.den());
    RationalExpr numerator = h * linear * dx;
    if (!numerator.is_polynomial() || numerator.num().degree(p) > 1)
        throw StructureViolation("the yt2^2 coefficient is not of the form (B1 + B2 yt1) / ((Y~ - X~ yt1) D(x))");

    ResidueObstruction out;
    auto parts = numerator.num().as_univariate(p);
    parts.resize(2);
    out.b1 = RationalExpr(parts[0]);
    out.b2 = RationalExpr(parts[1]);
    const RationalExpr z = sym(variable("z"));
    out.f = (out.b1 + out.b2 * z) / (jets::phi('x', 1, 0) + jets::phi('x', 0, 1) * z);
    out.omega = residue_simple_pole(out.f, variable("z"));
    return out;
}

// -------------------------------------------------------------- closure

bool ClosureCertificate::all_verified() const {
    for (const auto& [name, ok] : verified)
        if (!ok) return false;
    return true;
}

nlohmann::json ClosureCertificate::to_json() const {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& [name, ok] : verified) v.push_back({{"identity", name}, {"holds", ok}});
    return {{"description", description}, {"provenance", provenance}, {"laws", laws_json(laws)}, {"verified", v}};
}

ClosureCertificate third_order_closure_check(bool tie_b) {
    using I = OdeClassCoeffs;
    const OdeClassCoeffs member = OdeClassCoeffs::opaque(tie_b);
    const RationalExpr g = transform_equation(claims::class_rhs(member), GeneralMap{});
    MembershipResult m = class_membership(g, JetVars::target(), tie_b);
    if (!m.in_class) {
        std::optional<RationalExpr> factor;
        if (m.residue)
            factor = *m.residue / ((coeff("B") + 3 * coeff("X")) * jets::jacobian_determinant());
        throw ClosureRefuted("the transformed equation leaves the class", std::move(m), std::move(factor));
    }
    const OdeClassCoeffs& c = *m.coeffs;
    ClosureCertificate cert;
    cert.description = tie_b ? "third-order class with B = -3X under the general point transformation"
                             : "third-order class with B independent under the general point transformation";
    cert.provenance = kDerivedProvenance;
    for (std::size_t i = 0; i < I::kCount; ++i) {
        auto idx = static_cast<I::Index>(i);
        cert.laws.push_back({std::string(I::name(idx)) + "~", c.effective(idx)});
    }
    cert.verified.emplace_back("B~ + 3 X~ = 0", (c.effective(I::B) + 3 * c[I::X]).is_zero());
    cert.verified.emplace_back("rebuilt right-hand side equals the transformed one",
                               claims::class_rhs(c, JetVars::target()) == g);
    const RationalExpr X = coeff("X"), Y = coeff("Y");
    const RationalExpr expected[] = {-(Y * jets::phi('x', 0, 1) - X * jets::phi('y', 0, 1)),
                                     Y * jets::phi('x', 1, 0) - X * jets::phi('y', 1, 0)};
    const RationalExpr got[] = {c[I::X], c[I::Y]};
    cert.verified.emplace_back("(X~, Y~) is proportional to (-(Y x_0_1 - X y_0_1), Y x_1_0 - X y_1_0)",
                               proportional(got, expected));
    cert.verified.emplace_back("x_1_0 + x_0_1 yt1 cancels from the denominator",
                               gcd(g.den(), jets::total_derivative_of_x().num()).is_constant());
    return cert;
}

std::vector<ClosureCertificate> second_order_closure_checks() {
    std::vector<ClosureCertificate> out;
    auto refuted = [](const std::string& what, const SecondOrderMembership& s) {
        MembershipResult m;
        m.obstructions = s.obstructions;
        return ClosureRefuted(what, std::move(m), std::nullopt);
    };
    auto laws_of = [](const SecondOrderMembership& s) {
        std::vector<CoefficientLaw> laws;
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) laws.push_back({s.names[i] + "~", s.coeffs[i]});
        return laws;
    };

    {
        const std::array<RationalExpr, 4> c{coeff("P"), coeff("Q"), coeff("R"), coeff("S")};
        const RationalExpr g = transform_second_order(claims::cubic_class_rhs(c), GeneralMap{});
        auto m = cubic_membership(g);
        if (!m.in_class) throw refuted("the cubic class is not closed", m);
        ClosureCertificate cert;
        cert.description = "y'' = P + 3Q y' + 3R y'^2 + S y'^3 under the general point transformation";
        cert.provenance = kDerivedProvenance;
        cert.laws = laws_of(m);
        std::array<RationalExpr, 4> t{m.coeffs[0], m.coeffs[1], m.coeffs[2], m.coeffs[3]};
        cert.verified.emplace_back("rebuilt right-hand side equals the transformed one",
                                   claims::cubic_class_rhs(t, JetVars::target()) == g);
        out.push_back(std::move(cert));
    }
    {
        const std::array<RationalExpr, 7> c{coeff("P"), coeff("Q"), coeff("R"), coeff("S"),
                                            coeff("L"), coeff("X"), coeff("Y")};
        const RationalExpr g = transform_second_order(claims::point_expansion_rhs(c), GeneralMap{});
        auto m = point_expansion_membership(g);
        if (!m.in_class) throw refuted("the point-expansion class is not closed", m);
        ClosureCertificate cert;
        cert.description =
            "y'' = (P + 4Q y' + 6R y'^2 + 4S y'^3 + L y'^4) / (Y - X y') under the general point transformation";
        cert.provenance = kDerivedProvenance;
        cert.laws = laws_of(m);
        std::array<RationalExpr, 7> t;
        std::copy(m.coeffs.begin(), m.coeffs.end(), t.begin());
        cert.verified.emplace_back("rebuilt right-hand side equals the transformed one",
                                   claims::point_expansion_rhs(t, JetVars::target()) == g);
        const RationalExpr X = coeff("X"), Y = coeff("Y");
        const RationalExpr expected[] = {-(Y * jets::phi('x', 0, 1) - X * jets::phi('y', 0, 1)),
                                         Y * jets::phi('x', 1, 0) - X * jets::phi('y', 1, 0)};
        const RationalExpr got[] = {m.coeffs[5], m.coeffs[6]};
        cert.verified.emplace_back("(X~, Y~) is proportional to (-(Y x_0_1 - X y_0_1), Y x_1_0 - X y_1_0)",
                                   proportional(got, expected));
        out.push_back(std::move(cert));
    }
    {
        const RationalExpr g = transform_second_order(RationalExpr(), ConcreteMap::swap());
        auto m = cubic_membership(g);
        if (!m.in_class) throw refuted("y'' = 0 leaves the cubic class under the swap map", m);
        ClosureCertificate cert;
        cert.description = "y'' = 0 under the swap x = yt, y = xt";
        cert.provenance = "forced by y'' = -yt2 / yt1^3";
        cert.laws = laws_of(m);
        cert.verified.emplace_back("transformed right-hand side is 0", g.is_zero());
        out.push_back(std::move(cert));
    }
    return out;
}

} // namespace jetcalc::invariance
