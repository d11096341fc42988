#pragma once

// Seeded property checks shared by the unit suites and the acceptance binary.
// Each returns how many cases ran and the first few failures.

#include <cstdint>
#include <string>
#include <vector>

#include "jetcalc/errors.hpp"
#include "jetcalc/invariance.hpp"
#include "jetcalc/jets.hpp"
#include "generators.hpp"

namespace jetcalc::testgen {

struct PropertyOutcome {
    int cases = 0;
    int passed = 0;
    int resamples = 0;
    std::vector<std::string> failures;

    bool ok() const { return cases > 0 && passed == cases; }
    void fail(std::string what) {
        if (failures.size() < 5) failures.push_back(std::move(what));
    }
};

inline PropertyOutcome leibniz_property(std::uint64_t seed, int cases) {
    PropertyOutcome out;
    auto vars = differentiable_vars();
    for (int i = 0; i < cases; ++i) {
        auto rng = oracle::case_rng(seed, static_cast<std::uint64_t>(i));
        RationalExpr f = random_rational(rng, vars);
        RationalExpr g = random_rational(rng, vars);
        RationalExpr lhs = jets::total_derivative(f * g);
        RationalExpr rhs = jets::total_derivative(f) * g + f * jets::total_derivative(g);
        ++out.cases;
        if (lhs == rhs)
            ++out.passed;
        else
            out.fail("case " + std::to_string(i) + ": f = " + f.to_string() + ", g = " + g.to_string());
    }
    return out;
}

inline PropertyOutcome substitution_homomorphism(std::uint64_t seed, int cases) {
    PropertyOutcome out;
    SymbolId x = variable("x"), y = variable("y"), z = variable("z");
    for (int i = 0; i < cases; ++i) {
        auto rng = oracle::case_rng(seed, static_cast<std::uint64_t>(i));
        for (int attempt = 0; attempt < oracle::kMaxResample; ++attempt) {
            RationalExpr a = random_rational(rng, {x, y, z});
            RationalExpr b = random_rational(rng, {x, y, z});
            Bindings s{{x, random_rational(rng, {y, z})}, {z, random_polynomial(rng, {x, y}, 3, 2)}};
            try {
                bool sum = substitute(a + b, s) == substitute(a, s) + substitute(b, s);
                bool prod = substitute(a * b, s) == substitute(a, s) * substitute(b, s);
                ++out.cases;
                if (sum && prod)
                    ++out.passed;
                else
                    out.fail("case " + std::to_string(i) + ": a = " + a.to_string() + ", b = " + b.to_string());
                break;
            } catch (const DegenerateSubstitution&) {
                ++out.resamples;
            }
        }
    }
    return out;
}

/// Scaling all twelve coefficients by a nonzero function leaves the extracted
/// canonical tuple unchanged, and the tuple rebuilds the right-hand side.
inline PropertyOutcome gauge_invariance(std::uint64_t seed, int cases) {
    PropertyOutcome out;
    JetVars src = JetVars::source();
    for (int i = 0; i < cases; ++i) {
        auto rng = oracle::case_rng(seed, static_cast<std::uint64_t>(i));
        OdeClassCoeffs c = random_class_coeffs(rng, false);
        RationalExpr lambda = random_gauge(rng);
        OdeClassCoeffs scaled = c;
        for (std::size_t k = 0; k < OdeClassCoeffs::kCount; ++k)
            scaled[static_cast<OdeClassCoeffs::Index>(k)] *= lambda;
        RationalExpr g = claims::class_rhs(c, src);
        auto m1 = invariance::class_membership(g, src);
        auto m2 = invariance::class_membership(claims::class_rhs(scaled, src), src);
        ++out.cases;
        bool ok = m1.in_class && m2.in_class && m1.coeffs && m2.coeffs && *m1.coeffs == *m2.coeffs &&
                  claims::class_rhs(*m1.coeffs, src) == g;
        if (ok)
            ++out.passed;
        else
            out.fail("case " + std::to_string(i) + ": g = " + g.to_string() + ", lambda = " + lambda.to_string());
    }
    return out;
}

/// Under the identity map the transform only renames jets.  Half the cases
/// are class members, half arbitrary rational functions of x, y, y', y''.
inline PropertyOutcome identity_fixed_point(std::uint64_t seed, int cases) {
    PropertyOutcome out;
    std::vector<SymbolId> vars{variable("x"), variable("y"), jet(1, false), jet(2, false)};
    for (int i = 0; i < cases; ++i) {
        auto rng = oracle::case_rng(seed, static_cast<std::uint64_t>(i));
        RationalExpr f = (i % 2 == 0) ? claims::class_rhs(random_class_coeffs(rng, true))
                                      : random_rational(rng, vars);
        ++out.cases;
        if (invariance::transform_equation(f, ConcreteMap::identity()) == invariance::to_target_names(f))
            ++out.passed;
        else
            out.fail("case " + std::to_string(i) + ": f = " + f.to_string());
    }
    return out;
}

/// Transforming by the composite map agrees, at a random point and random
/// jet values, with transforming by the two factors in turn.  One factor is
/// quadratic and the other affine, alternating by case, which keeps the
/// composite at degree 2.
inline PropertyOutcome composition_agreement(std::uint64_t seed, int cases) {
    PropertyOutcome out;
    SymbolId xt = ConcreteMap::xt(), yt = ConcreteMap::yt();
    SymbolId t1 = jet(1, true), t2 = jet(2, true);
    for (int i = 0; i < cases; ++i) {
        auto rng = oracle::case_rng(seed, static_cast<std::uint64_t>(i));
        bool done = false;
        for (int attempt = 0; attempt < oracle::kMaxResample && !done; ++attempt) {
            ConcreteMap inner = random_quadratic_map(rng, i % 2 == 1);
            ConcreteMap outer = random_quadratic_map(rng, i % 2 == 0);
            RationalExpr f = claims::class_rhs(random_class_coeffs(rng, true));
            Point at{Rational(uniform(rng, -3, 3)), Rational(uniform(rng, -3, 3))};
            Point mid = outer.image(at);
            if (outer.jacobian_determinant_at(at) == 0 || inner.jacobian_determinant_at(mid) == 0) {
                ++out.resamples;
                continue;
            }
            inner.base = mid;
            outer.base = at;
            std::map<SymbolId, Rational> values{{xt, at.first}, {yt, at.second},
                                                {t1, Rational(uniform(rng, -3, 3))},
                                                {t2, Rational(uniform(rng, -3, 3))}};
            try {
                RationalExpr direct = invariance::transform_equation(f, compose(inner, outer));
                RationalExpr step = invariance::transform_equation(f, inner);
                RationalExpr stepped =
                    invariance::transform_equation(invariance::to_source_names(step), outer);
                Rational lhs = direct.evaluate(values);
                Rational rhs = stepped.evaluate(values);
                ++out.cases;
                if (lhs == rhs)
                    ++out.passed;
                else
                    out.fail("case " + std::to_string(i) + ": " + lhs.get_str() + " != " + rhs.get_str());
                done = true;
            } catch (const DegenerateSample&) {
                ++out.resamples;
            } catch (const DegenerateMap&) {
                ++out.resamples;
            }
        }
        if (!done) {
            ++out.cases;
            out.fail("case " + std::to_string(i) + ": no nondegenerate sample");
        }
    }
    return out;
}

} // namespace jetcalc::testgen
