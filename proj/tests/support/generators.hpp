#pragma once

// Random expressions and class members for the property suites.  Every
// generator is driven by an explicit mt19937_64 so runs are reproducible.

#include <random>
#include <vector>

#include "jetcalc/claims.hpp"
#include "jetcalc/concrete_map.hpp"
#include "jetcalc/ode_class.hpp"
#include "jetcalc/oracle.hpp"
#include "jetcalc/rational_expr.hpp"
#include "jetcalc/symbol.hpp"

namespace jetcalc::testgen {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return oracle::draw(rng, lo, hi); }

/// Sum of up to `max_terms` monomials of total degree <= max_degree over `vars`,
/// integer coefficients in [-5, 5].  May be zero.
inline Polynomial random_polynomial(Rng& rng, const std::vector<SymbolId>& vars, int max_terms, int max_degree) {
    std::vector<Term> terms;
    int n = static_cast<int>(uniform(rng, 1, max_terms));
    for (int t = 0; t < n; ++t) {
        std::vector<Monomial::Factor> factors;
        int deg = static_cast<int>(uniform(rng, 0, max_degree));
        for (int d = 0; d < deg; ++d)
            factors.emplace_back(vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vars.size()) - 1))], 1u);
        long c = uniform(rng, -5, 5);
        if (c != 0) terms.push_back({Monomial::from_factors(factors), Rational(c)});
    }
    return Polynomial::from_terms(std::move(terms));
}

inline Polynomial random_nonzero_polynomial(Rng& rng, const std::vector<SymbolId>& vars, int max_terms,
                                            int max_degree) {
    for (;;) {
        Polynomial p = random_polynomial(rng, vars, max_terms, max_degree);
        if (!p.is_zero()) return p;
    }
}

inline RationalExpr random_rational(Rng& rng, const std::vector<SymbolId>& vars, int max_terms = 3,
                                    int max_degree = 2) {
    return RationalExpr::fraction(random_polynomial(rng, vars, max_terms, max_degree),
                                  random_nonzero_polynomial(rng, vars, max_terms, max_degree));
}

inline std::vector<SymbolId> plane_vars() { return {variable("x"), variable("y")}; }

/// Map partials up to order 2, tilde jets y~', y~'' and the plane variables:
/// everything the total derivative acts on without leaving the order budget.
inline std::vector<SymbolId> differentiable_vars() {
    return {map_derivative('x', 1, 0), map_derivative('x', 0, 1), map_derivative('y', 1, 0),
            map_derivative('y', 0, 1), map_derivative('x', 2, 0), map_derivative('y', 1, 1),
            jet(1, true),              jet(2, true),              variable("x"),
            variable("y")};
}

/// Class coefficients as small polynomials in x, y; X and Y are never both zero.
inline OdeClassCoeffs random_class_coeffs(Rng& rng, bool tied) {
    OdeClassCoeffs c;
    c.set_tied_b(tied);
    auto vars = plane_vars();
    for (std::size_t i = 0; i < OdeClassCoeffs::kCount; ++i)
        c[static_cast<OdeClassCoeffs::Index>(i)] = random_polynomial(rng, vars, 2, 1);
    while (c[OdeClassCoeffs::X].is_zero() && c[OdeClassCoeffs::Y].is_zero())
        c[OdeClassCoeffs::Y] = random_polynomial(rng, vars, 2, 1);
    return c;
}

/// Random nonzero scalar function of x, y.
inline RationalExpr random_gauge(Rng& rng) {
    auto vars = plane_vars();
    return RationalExpr::fraction(random_nonzero_polynomial(rng, vars, 2, 1),
                                  random_nonzero_polynomial(rng, vars, 2, 1));
}

/// Affine-plus-quadratic concrete map with integer coefficients in [-3, 3];
/// with `affine_only` the quadratic monomials are left out.
inline ConcreteMap random_quadratic_map(Rng& rng, bool affine_only = false) {
    SymbolId xt = ConcreteMap::xt(), yt = ConcreteMap::yt();
    auto component = [&] {
        std::vector<Term> terms;
        const Monomial monos[] = {Monomial(), Monomial(xt), Monomial(yt), Monomial(xt, 2),
                                  Monomial(xt) * Monomial(yt), Monomial(yt, 2)};
        for (const auto& m : monos) {
            long c = uniform(rng, -3, 3);
            if (m.degree() == 2 && (affine_only || uniform(rng, 0, 1) == 0)) c = 0;
            if (c != 0) terms.push_back({m, Rational(c)});
        }
        return Polynomial::from_terms(std::move(terms));
    };
    ConcreteMap m;
    m.chi = component();
    m.psi = component();
    return m;
}

} // namespace jetcalc::testgen
