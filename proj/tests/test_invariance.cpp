#include <doctest.h>

#include "jetcalc/claims.hpp"
#include "jetcalc/errors.hpp"
#include "jetcalc/invariance.hpp"
#include "jetcalc/jets.hpp"
#include "support/properties.hpp"

using namespace jetcalc;
using invariance::GeneralMap;

namespace {

RationalExpr phi(char c, int i, int j) { return jets::phi(c, i, j); }
RationalExpr t(int k) { return RationalExpr::symbol(jet(k, true)); }
RationalExpr s(int k) { return RationalExpr::symbol(jet(k, false)); }
RationalExpr coef(std::string_view n) { return RationalExpr::symbol(coefficient(n)); }

RationalExpr q2_slice(const RationalExpr& g) {
    std::vector<SymbolId> vars{jet(2, true)};
    auto c = collect(g * g.den(), vars);
    auto it = c.find(Monomial(jet(2, true), 2));
    return it == c.end() ? RationalExpr(0) : it->second / g.den();
}

} // namespace

TEST_CASE("transform of y''' = 0") {
    CHECK(invariance::transform_equation(0, ConcreteMap::identity()) == 0);
    RationalExpr g = invariance::transform_equation(0, GeneralMap{});
    CHECK(q2_slice(g) == 3 * phi('x', 0, 1) / jets::total_derivative_of_x());
    CHECK_FALSE(g.depends_on(jet(3, true)));
}

TEST_CASE("transform of the B term") {
    RationalExpr f = coef("B") * s(2).pow(2) / (coef("Y") - coef("X") * s(1));
    RationalExpr g = invariance::transform_equation(f, GeneralMap{});
    auto r = invariance::residue_obstruction();
    RationalExpr dx = jets::total_derivative_of_x();
    RationalExpr linear = (coef("Y") - coef("X") * jets::third_order_prolongation().yp) * dx;
    CHECK(q2_slice(g) == (r.b1 + r.b2 * t(1)) / (linear * dx));
}

TEST_CASE("transformed B-term numerators against the published ones") {
    // The derivation gives the published pair with the two entries interchanged.
    auto derived = invariance::residue_obstruction();
    auto published = claims::claimed_residue_data();
    CHECK(derived.b1 == published.b2);
    CHECK(derived.b2 == published.b1);
}

TEST_CASE("residue of the yt2^2 coefficient") {
    auto r = invariance::residue_obstruction();
    RationalExpr bx = coef("B") + 3 * coef("X");
    RationalExpr det = jets::jacobian_determinant();
    CHECK(r.omega == bx * det / phi('x', 0, 1));
    CHECK(phi('x', 0, 1) * r.omega == bx * det);
    CHECK(substitute(r.omega, {{coefficient("B"), -3 * coef("X")}}) == 0);

    // the published closed form at B = 0, X = 1, det S = 2
    RationalExpr closed = claims::claimed_residue_data().omega;
    Bindings at{{coefficient("B"), RationalExpr(0)},
                {coefficient("X"), RationalExpr(1)},
                {map_derivative('x', 1, 0), RationalExpr(2)},
                {map_derivative('y', 0, 1), RationalExpr(1)},
                {map_derivative('x', 0, 1), RationalExpr(0)},
                {map_derivative('y', 1, 0), RationalExpr(0)}};
    CHECK(substitute(closed, at) == 6);
}

TEST_CASE("membership of simple right-hand sides") {
    auto zero = invariance::class_membership(0);
    REQUIRE(zero.in_class);
    for (std::size_t i = 0; i < OdeClassCoeffs::kCount; ++i) {
        auto idx = static_cast<OdeClassCoeffs::Index>(i);
        CHECK((*zero.coeffs)[idx] == (idx == OdeClassCoeffs::Y ? 1 : 0));
    }

    auto cubic = invariance::class_membership(t(2).pow(3));
    CHECK_FALSE(cubic.in_class);
    REQUIRE_FALSE(cubic.obstructions.empty());
    CHECK(cubic.obstructions.front().find('3') != std::string::npos);
    CHECK_FALSE(cubic.offending_terms.empty());

    CHECK_FALSE(invariance::class_membership(t(3)).in_class);
    CHECK_FALSE(invariance::class_membership(1 / t(2)).in_class);
    CHECK_FALSE(invariance::class_membership(t(1).pow(6)).in_class);
    CHECK(invariance::class_membership(t(1).pow(5) / (1 - t(1))).in_class);
    CHECK_FALSE(invariance::class_membership(t(1).pow(6) / (1 - t(1))).in_class);
    CHECK(invariance::class_membership(s(2), JetVars::source()).in_class);
}

TEST_CASE("transform of y''' = 0 lies in the tied class") {
    RationalExpr g = invariance::transform_equation(0, GeneralMap{});
    auto m = invariance::class_membership(g, JetVars::target(), true);
    REQUIRE(m.in_class);
    const auto& c = *m.coeffs;
    CHECK(c.effective(OdeClassCoeffs::B) == -3 * c[OdeClassCoeffs::X]);
    CHECK(proportional(std::vector<RationalExpr>{c[OdeClassCoeffs::X], c[OdeClassCoeffs::Y]},
                       std::vector<RationalExpr>{-phi('x', 0, 1), phi('x', 1, 0)}));
    CHECK(claims::class_rhs(c, JetVars::target()) == g);
}

TEST_CASE("closure of the tied class") {
    auto cert = invariance::third_order_closure_check(true);
    CHECK(cert.all_verified());
    CHECK(cert.laws.size() == OdeClassCoeffs::kCount);
    CHECK(cert.to_json()["verified"].size() == cert.verified.size());
}

TEST_CASE("an independent B leaves the class") {
    bool refuted = false;
    try {
        invariance::third_order_closure_check(false);
    } catch (const invariance::ClosureRefuted& e) {
        refuted = true;
        CHECK_FALSE(e.result().in_class);
        REQUIRE(e.result().residue.has_value());
        REQUIRE(e.gauge_factor().has_value());
        const RationalExpr& lambda = *e.gauge_factor();
        CHECK_FALSE(lambda.is_zero());
        CHECK_FALSE(lambda.depends_on(coefficient("B")));
        CHECK_FALSE(lambda.depends_on(coefficient("X")));
        CHECK(*e.result().residue == lambda * (coef("B") + 3 * coef("X")) * jets::jacobian_determinant());
    }
    CHECK(refuted);
}

TEST_CASE("second-order closures") {
    auto certs = invariance::second_order_closure_checks();
    CHECK(certs.size() == 3);
    for (const auto& c : certs) {
        INFO(c.description);
        CHECK(c.all_verified());
    }
    CHECK(invariance::transform_second_order(0, ConcreteMap::swap()) == 0);
    auto m = invariance::cubic_membership(0);
    CHECK(m.in_class);
    for (const auto& v : m.coeffs) CHECK(v == 0);
    CHECK_FALSE(invariance::cubic_membership(t(1).pow(4)).in_class);
    CHECK(invariance::point_expansion_membership(t(1).pow(4)).in_class);
}

TEST_CASE("degenerate and malformed inputs") {
    ConcreteMap flat;
    flat.chi = Polynomial::variable(ConcreteMap::xt());
    flat.psi = Polynomial::variable(ConcreteMap::xt());
    CHECK_THROWS_AS(invariance::transform_equation(0, flat), DegenerateMap);

    ConcreteMap pinched;
    pinched.chi = Polynomial::variable(ConcreteMap::xt(), 2);
    pinched.psi = Polynomial::variable(ConcreteMap::yt());
    pinched.base = Point{0, 1};
    CHECK_THROWS_AS(invariance::transform_equation(0, pinched), DegenerateMap);

    CHECK_THROWS(invariance::transform_equation(t(1), GeneralMap{}));
}

TEST_CASE("jet renaming round trip") {
    RationalExpr f = s(1) * s(2) + RationalExpr::symbol(variable("x"));
    CHECK(invariance::to_source_names(invariance::to_target_names(f)) == f);
    CHECK(invariance::to_target_names(f) == t(1) * t(2) + RationalExpr::symbol(variable("xt")));
}

TEST_CASE("gauge invariance of membership") {
    auto out = testgen::gauge_invariance(303, 50);
    CHECK(out.cases == 50);
    CHECK(out.ok());
    for (const auto& f : out.failures) MESSAGE(f);
}

TEST_CASE("identity map fixes every equation") {
    auto out = testgen::identity_fixed_point(404, 30);
    CHECK(out.ok());
    for (const auto& f : out.failures) MESSAGE(f);
}

TEST_CASE("composite maps agree with stepwise transforms") {
    auto out = testgen::composition_agreement(505, 25);
    CHECK(out.cases == 25);
    CHECK(out.ok());
    for (const auto& f : out.failures) MESSAGE(f);
}
