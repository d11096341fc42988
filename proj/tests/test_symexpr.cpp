#include <doctest.h>

#include "jetcalc/errors.hpp"
#include "jetcalc/rational_expr.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace jetcalc;

namespace {

RationalExpr sym(std::string_view name) { return RationalExpr::symbol(variable(name)); }

} // namespace

TEST_CASE("symbols are interned once and keep their order") {
    SymbolId a = variable("x");
    SymbolId b = variable("x");
    CHECK(a == b);
    std::size_t before = symbol_count();
    SymbolId fresh = variable("symexpr_probe");
    CHECK(symbol_count() == before + 1);
    CHECK(fresh > a);
    CHECK(lookup_symbol("symexpr_probe") == fresh);
    CHECK_FALSE(lookup_symbol("never_interned_name").has_value());
    CHECK(map_derivative('x', 1, 0) != map_derivative('y', 1, 0));
    CHECK(jet(1, true) != jet(1, false));
}

TEST_CASE("like terms combine") {
    RationalExpr x = sym("x"), y = sym("y");
    CHECK(x / y + x / y == (2 * x) / y);
}

TEST_CASE("additive identity") {
    testgen::Rng rng(7);
    auto vars = testgen::plane_vars();
    for (int i = 0; i < 20; ++i) {
        RationalExpr a = testgen::random_rational(rng, vars);
        CHECK(a + 0 == a);
    }
}

TEST_CASE("cancellation reduces through the gcd") {
    RationalExpr x = sym("x"), y = sym("y");
    RationalExpr r = ((x + y) / (x - y)) * (x - y);
    CHECK(r == x + y);
    CHECK(r.is_polynomial());
}

TEST_CASE("denominator is monic") {
    RationalExpr x = sym("x"), y = sym("y");
    RationalExpr r = x / (-2 * y + 4);
    CHECK(r.den().leading_coeff() == 1);
    CHECK(r == -x / (2 * y - 4));
}

TEST_CASE("division by zero is a domain error") {
    RationalExpr x = sym("x");
    CHECK_THROWS_AS(x / (x - x), DomainError);
    CHECK_THROWS_AS(RationalExpr::fraction(Polynomial(1), Polynomial()), DomainError);
    CHECK_THROWS_AS(RationalExpr(0).pow(-1), DomainError);
}

TEST_CASE("substitution") {
    SymbolId xs = variable("x"), ys = variable("y");
    RationalExpr x = sym("x"), y = sym("y");
    CHECK(substitute(x * x, {{xs, y + 1}}) == y * y + 2 * y + 1);
    CHECK(substitute(x / y, {{xs, y}}) == 1);
    CHECK_THROWS_AS(substitute(x / (y - 1), {{ys, RationalExpr(1)}}), DegenerateSubstitution);
}

TEST_CASE("collect groups by monomials in the chosen variables") {
    SymbolId us = variable("u"), vs = variable("v");
    RationalExpr u = sym("u"), v = sym("v");
    std::vector<SymbolId> vars{vs};
    Collected c = collect(3 * u * v * v + u, vars);
    REQUIRE(c.size() == 2);
    CHECK(c.at(Monomial(vs, 2)) == 3 * u);
    CHECK(c.at(Monomial()) == u);
    CHECK(collect(RationalExpr(0), vars).empty());
    CHECK_THROWS_AS(collect(u / v, vars), NotPolynomialInVars);
    std::vector<SymbolId> other{us};
    CHECK(collect(u / v, other).at(Monomial(us)) == 1 / v);
}

TEST_CASE("residue at a simple pole") {
    SymbolId zs = variable("z");
    RationalExpr z = RationalExpr::symbol(zs);
    CHECK(residue_simple_pole((3 + 4 * z) / (1 + 2 * z), zs) == RationalExpr(Rational(1, 2)));

    RationalExpr lambda = sym("x") * sym("x") + 1;
    RationalExpr den = sym("y") + sym("x") * z;
    CHECK(residue_simple_pole(lambda * den / den, zs) == 0);
    CHECK(residue_simple_pole(sym("x") / sym("y"), zs) == 0);
    CHECK_THROWS_AS(residue_simple_pole(1 / (z * z + 1), zs), UnsupportedPole);

    // (b0 + b1 z)/(c0 + c1 z) has residue (b0 c1 - b1 c0)/c1^2
    RationalExpr b0 = sym("x"), b1 = sym("y"), c0 = sym("x") + 2, c1 = sym("y") - 1;
    CHECK(residue_simple_pole((b0 + b1 * z) / (c0 + c1 * z), zs) == (b0 * c1 - b1 * c0) / (c1 * c1));
}

TEST_CASE("residue is linear in the numerator") {
    SymbolId zs = variable("z");
    testgen::Rng rng(11);
    std::vector<SymbolId> vars{variable("x"), variable("y")};
    RationalExpr z = RationalExpr::symbol(zs);
    for (int i = 0; i < 20; ++i) {
        RationalExpr den = testgen::random_nonzero_polynomial(rng, vars, 2, 1) + z;
        RationalExpr f = testgen::random_rational(rng, vars) * z / den;
        RationalExpr g = testgen::random_polynomial(rng, vars, 3, 2) / den;
        RationalExpr k = testgen::random_rational(rng, vars);
        CHECK(residue_simple_pole(f + k * g, zs) == residue_simple_pole(f, zs) + k * residue_simple_pole(g, zs));
    }
}

TEST_CASE("gcd and reduced fractions") {
    testgen::Rng rng(3);
    std::vector<SymbolId> vars{variable("x"), variable("y"), variable("z")};
    for (int i = 0; i < 50; ++i) {
        Polynomial p = testgen::random_nonzero_polynomial(rng, vars, 3, 2);
        Polynomial q = testgen::random_nonzero_polynomial(rng, vars, 3, 2);
        Polynomial r = testgen::random_nonzero_polynomial(rng, vars, 3, 2);
        CHECK(RationalExpr::fraction(p * r, q * r) == RationalExpr::fraction(p, q));
        Polynomial g = gcd(p * r, q * r);
        CHECK(divide_exact(g, r.monic()).has_value());
        CHECK(divide_exact(p * r, g).has_value());
        CHECK(divide_exact(q * r, g).has_value());
        RationalExpr e = RationalExpr::fraction(p, q);
        CHECK(gcd(e.num(), e.den()).is_constant());
    }
}

TEST_CASE("field axioms on random triples") {
    testgen::Rng rng(5);
    std::vector<SymbolId> vars{variable("x"), variable("y"), variable("z")};
    for (int i = 0; i < 200; ++i) {
        RationalExpr a = testgen::random_rational(rng, vars);
        RationalExpr b = testgen::random_rational(rng, vars);
        RationalExpr c = testgen::random_rational(rng, vars);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == 0);
        CHECK(a.cross_equal(a * 1));
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    auto out = testgen::substitution_homomorphism(101, 100);
    CHECK(out.cases == 100);
    CHECK(out.ok());
    for (const auto& f : out.failures) MESSAGE(f);
}

TEST_CASE("printing is canonical") {
    RationalExpr x = sym("x"), y = sym("y");
    CHECK((3 * (x + y).pow(2)).to_string() == (3 * x * x + 6 * x * y + 3 * y * y).to_string());
    CHECK(RationalExpr(0).to_string() == "0");
}

TEST_CASE("gcd of many operands stays small") {
    // Folding a dozen degree-11 operands used to carry unreduced subresultant
    // coefficients from one step to the next.
    testgen::Rng rng(17);
    SymbolId xs = variable("x"), ys = variable("y");
    Polynomial common = Polynomial::variable(xs) * Polynomial::variable(ys) + 3;
    std::vector<Polynomial> ops;
    for (int i = 0; i < 12; ++i) {
        Polynomial p = testgen::random_nonzero_polynomial(rng, {xs, ys}, 6, 5);
        Polynomial q = Polynomial::variable(xs, 6) + p + Polynomial(i + 1);
        ops.push_back(common * q);
    }
    Polynomial g = gcd(std::span<const Polynomial>(ops));
    CHECK(g == common.monic());
}
