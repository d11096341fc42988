#include "jetcalc/rational_expr.hpp"

#include <algorithm>
#include <set>

#include "jetcalc/errors.hpp"

namespace jetcalc {
namespace {

Polynomial exact(const Polynomial& a, const Polynomial& b) {
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("expected exact division failed");
    return std::move(*q);
}

bool is_one(const Polynomial& p) { return p.is_constant() && !p.is_zero() && p.constant_value() == 1; }

} // namespace

RationalExpr RationalExpr::fraction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DomainError("division by an expression that is identically zero");
    RationalExpr r;
    if (num.is_zero()) return r;
    if (den.is_constant()) {
        r.num_ = num.scaled(1 / den.constant_value());
        return r;
    }
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
        num = exact(num, g);
        den = exact(den, g);
    }
    Rational lc = den.leading_coeff();
    if (lc != 1) {
        Rational inv = 1 / lc;
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RationalExpr RationalExpr::coprime_fraction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DomainError("division by an expression that is identically zero");
    RationalExpr r;
    if (num.is_zero()) return r;
    Rational inv = 1 / den.leading_coeff();
    r.num_ = num.scaled(inv);
    r.den_ = den.scaled(inv);
    return r;
}

std::vector<SymbolId> RationalExpr::variables() const {
    auto a = num_.variables();
    auto b = den_.variables();
    std::vector<SymbolId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

RationalExpr RationalExpr::operator-() const {
    RationalExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (is_one(a.den_)) return RationalExpr(a.num_ + b.num_);
        return RationalExpr::fraction(a.num_ + b.num_, a.den_);
    }
    // For reduced inputs, gcd(t, den_a * den_b / g) = gcd(t, g).
    Polynomial g = gcd(a.den_, b.den_);
    if (g.is_constant()) {
        RationalExpr r;
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
        if (r.num_.is_zero()) return RationalExpr();
        return r;
    }
    Polynomial ad = exact(a.den_, g);
    Polynomial bd = exact(b.den_, g);
    Polynomial t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return RationalExpr();
    Polynomial g2 = gcd(t, g);
    RationalExpr r;
    r.num_ = g2.is_constant() ? std::move(t) : exact(t, g2);
    r.den_ = ad * (g2.is_constant() ? b.den_ : exact(b.den_, g2));
    return r;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_zero() || b.is_zero()) return RationalExpr();
    if (a.is_polynomial() && b.is_polynomial()) return RationalExpr(a.num_ * b.num_);
    Polynomial g1 = is_one(b.den_) ? Polynomial(1) : gcd(a.num_, b.den_);
    Polynomial g2 = is_one(a.den_) ? Polynomial(1) : gcd(b.num_, a.den_);
    auto cut = [](const Polynomial& p, const Polynomial& g) { return g.is_constant() ? p : exact(p, g); };
    RationalExpr r;
    r.num_ = cut(a.num_, g1) * cut(b.num_, g2);
    r.den_ = cut(a.den_, g2) * cut(b.den_, g1);
    // Both denominators are monic, so their product and its quotients by monic gcds are too.
    return r;
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
    if (b.is_zero()) throw DomainError("division by an expression that is identically zero");
    RationalExpr inv;
    Rational lc = b.num_.leading_coeff();
    inv.num_ = b.den_.scaled(1 / lc);
    inv.den_ = b.num_.scaled(1 / lc);
    return a * inv;
}

RationalExpr RationalExpr::pow(int e) const {
    if (e < 0) return RationalExpr(1) / pow(-e);
    RationalExpr r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

bool RationalExpr::cross_equal(const RationalExpr& other) const {
    return num_ * other.den_ == other.num_ * den_;
}

Rational RationalExpr::evaluate(const std::map<SymbolId, Rational>& values) const {
    Rational d = den_.evaluate(values);
    if (sgn(d) == 0) throw DegenerateSample("denominator vanishes at the evaluation point");
    return num_.evaluate(values) / d;
}

std::string RationalExpr::to_string() const {
    if (is_one(den_)) return num_.to_string();
    std::string n = num_.to_string();
    if (num_.size() > 1) n = "(" + n + ")";
    std::string d = den_.to_string();
    if (den_.size() > 1 || den_.leading().mono.factors().size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

// ------------------------------------------------------------ substitution

RationalExpr substitute(const Polynomial& p, const Bindings& bindings) {
    std::vector<SymbolId> bound;
    for (auto s : p.variables())
        if (bindings.count(s)) bound.push_back(s);
    if (bound.empty()) return RationalExpr(p);

    struct Powers {
        std::vector<Polynomial> num;
        std::vector<Polynomial> den; // empty when the binding is a polynomial
        std::uint32_t top = 0;
    };
    std::map<SymbolId, Powers> powers;
    Polynomial common_den(1);
    std::vector<Polynomial> bases; // denominators of the bindings used
    for (auto s : bound) {
        const RationalExpr& b = bindings.at(s);
        Powers pw;
        pw.top = p.degree(s);
        pw.num.push_back(Polynomial(1));
        for (std::uint32_t k = 1; k <= pw.top; ++k) pw.num.push_back(pw.num.back() * b.num());
        if (!is_one(b.den())) {
            pw.den.push_back(Polynomial(1));
            for (std::uint32_t k = 1; k <= pw.top; ++k) pw.den.push_back(pw.den.back() * b.den());
            common_den = common_den * pw.den.back();
            bases.push_back(b.den());
        }
        powers.emplace(s, std::move(pw));
    }

    // Group by the exponent pattern over the bound symbols so each pattern's
    // product of powers is formed once.
    std::map<Monomial, std::vector<Term>, MonomialGreater> groups;
    for (const auto& t : p.terms()) {
        auto [in, out] = t.mono.split(bound);
        groups[in].push_back({std::move(out), t.coeff});
    }
    std::vector<Term> acc;
    for (auto& [pattern, terms] : groups) {
        Polynomial factor(1);
        for (auto s : bound) {
            const Powers& pw = powers.at(s);
            auto e = pattern.degree(s);
            if (e > 0) factor = factor * pw.num[e];
            if (!pw.den.empty() && e < pw.top) factor = factor * pw.den[pw.top - e];
        }
        Polynomial prod = factor * Polynomial::from_terms(std::move(terms));
        acc.insert(acc.end(), std::make_move_iterator(prod.terms().begin()),
                   std::make_move_iterator(prod.terms().end()));
    }
    Polynomial num = Polynomial::from_terms(std::move(acc));
    if (num.is_zero() || bases.empty()) return RationalExpr::fraction(std::move(num), common_den);

    // Any common factor of num and the product divides one of the bases, so
    // cancel base by base instead of taking one gcd against the whole product.
    Polynomial den = std::move(common_den);
    for (const auto& base : bases) {
        for (;;) {
            Polynomial h = gcd(base, den);
            if (h.is_constant()) break;
            Polynomial g = gcd(num, h);
            if (g.is_constant()) break;
            num = exact(num, g);
            den = exact(den, g);
        }
    }
    return RationalExpr::coprime_fraction(std::move(num), std::move(den));
}

RationalExpr substitute(const RationalExpr& e, const Bindings& bindings) {
    RationalExpr n = substitute(e.num(), bindings);
    RationalExpr d = substitute(e.den(), bindings);
    if (d.is_zero()) throw DegenerateSubstitution("denominator " + e.den().to_string() + " vanishes after substitution");
    return n / d;
}

// ---------------------------------------------------------------- collect

Collected collect(const RationalExpr& e, std::span<const SymbolId> vars) {
    std::vector<SymbolId> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end());
    for (auto s : sorted)
        if (e.den().depends_on(s))
            throw NotPolynomialInVars("'" + s.name() + "' occurs in the denominator");
    std::map<Monomial, std::vector<Term>, MonomialGreater> groups;
    for (const auto& t : e.num().terms()) {
        auto [in, out] = t.mono.split(sorted);
        groups[in].push_back({std::move(out), t.coeff});
    }
    Collected result;
    for (auto& [key, terms] : groups)
        result.emplace(key, RationalExpr::fraction(Polynomial::from_terms(std::move(terms)), e.den()));
    return result;
}

// ---------------------------------------------------------------- residue

RationalExpr residue_simple_pole(const RationalExpr& f, SymbolId z) {
    auto d = f.den().degree(z);
    if (d == 0) return RationalExpr();
    if (d > 1)
        throw UnsupportedPole("denominator has degree " + std::to_string(d) + " in " + z.name() +
                              "; only simple poles are supported");
    auto c = f.den().as_univariate(z);
    RationalExpr c1(c[1]);
    RationalExpr pole = -RationalExpr(c[0]) / c1;
    return substitute(f.num(), Bindings{{z, pole}}) / c1;
}

} // namespace jetcalc
