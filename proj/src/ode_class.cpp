#include "jetcalc/ode_class.hpp"

#include "jetcalc/errors.hpp"

namespace jetcalc {

OdeClassCoeffs OdeClassCoeffs::opaque(bool tied_b) {
    OdeClassCoeffs c;
    for (std::size_t i = 0; i < kCount; ++i) c.values_[i] = RationalExpr::symbol(coefficient(kCoefficientNames[i]));
    c.tied_b_ = tied_b;
    return c;
}

RationalExpr OdeClassCoeffs::effective(Index i) const {
    if (i == B && tied_b_) return RationalExpr(-3) * (*this)[X];
    return (*this)[i];
}

std::string_view OdeClassCoeffs::name(Index i) { return kCoefficientNames[static_cast<std::size_t>(i)]; }

OdeClassCoeffs OdeClassCoeffs::gauge_canonical() const {
    if ((*this)[X].is_zero() && (*this)[Y].is_zero()) throw DegenerateClass("X and Y are both identically zero");
    std::vector<RationalExpr> entries;
    for (std::size_t i = 0; i < kCount; ++i) entries.push_back(effective(static_cast<Index>(i)));
    auto [scaled, factor] = gauge_normalize(entries);
    OdeClassCoeffs out;
    for (std::size_t i = 0; i < kCount; ++i) out.values_[i] = scaled[i];
    out.tied_b_ = tied_b_;
    return out;
}

std::pair<std::vector<RationalExpr>, RationalExpr> gauge_normalize(std::span<const RationalExpr> entries) {
    // Common denominator first.
    Polynomial lcm(1);
    for (const auto& e : entries) {
        if (e.is_zero() || e.den().is_constant()) continue;
        Polynomial g = gcd(lcm, e.den());
        lcm = lcm * *divide_exact(e.den(), g);
    }
    std::vector<Polynomial> polys;
    for (const auto& e : entries)
        polys.push_back(e.is_zero() ? Polynomial() : e.num() * *divide_exact(lcm, e.den()));
    Polynomial g = gcd(std::span<const Polynomial>(polys));
    if (g.is_zero()) return {std::vector<RationalExpr>(entries.begin(), entries.end()), RationalExpr(1)};
    for (auto& p : polys)
        if (!p.is_zero()) p = *divide_exact(p, g);

    // Collective integer content and sign.
    mpz_class den_lcm = 1, num_gcd = 0;
    int sign = 0;
    for (const auto& p : polys) {
        for (const auto& t : p.terms()) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
        }
        if (sign == 0 && !p.is_zero()) sign = sgn(p.leading_coeff());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sign < 0) scale = -scale;

    std::vector<RationalExpr> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.emplace_back(p.scaled(scale));
    RationalExpr factor = RationalExpr::fraction(Polynomial(scale), Polynomial(1)) *
                          RationalExpr::fraction(lcm, g);
    return {std::move(out), std::move(factor)};
}

bool proportional(std::span<const RationalExpr> a, std::span<const RationalExpr> b) {
    if (a.size() != b.size()) return false;
    // All 2x2 minors against a pivot vanish.
    std::size_t pivot = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() != b[i].is_zero()) return false;
        if (pivot == a.size() && !a[i].is_zero()) pivot = i;
    }
    if (pivot == a.size()) return true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != pivot && !(a[i] * b[pivot] - b[i] * a[pivot]).is_zero()) return false;
    return true;
}

} // namespace jetcalc
