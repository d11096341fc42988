#include "jetcalc/concrete_map.hpp"

#include "jetcalc/symbol.hpp"

namespace jetcalc {

SymbolId ConcreteMap::xt() { return variable("xt"); }
SymbolId ConcreteMap::yt() { return variable("yt"); }

std::map<SymbolId, Rational> ConcreteMap::tilde_values(const Point& at) {
    return {{xt(), at.first}, {yt(), at.second}};
}

ConcreteMap ConcreteMap::identity() { return {Polynomial::variable(xt()), Polynomial::variable(yt()), std::nullopt}; }

ConcreteMap ConcreteMap::swap() { return {Polynomial::variable(yt()), Polynomial::variable(xt()), std::nullopt}; }

Polynomial ConcreteMap::partial(char component, int i, int j) const {
    Polynomial p = component == 'x' ? chi : psi;
    for (int k = 0; k < i; ++k) p = p.derivative(xt());
    for (int k = 0; k < j; ++k) p = p.derivative(yt());
    return p;
}

Rational ConcreteMap::partial_at(char component, int i, int j, const Point& at) const {
    return partial(component, i, j).evaluate(tilde_values(at));
}

Polynomial ConcreteMap::jacobian_determinant() const {
    return partial('x', 1, 0) * partial('y', 0, 1) - partial('x', 0, 1) * partial('y', 1, 0);
}

Rational ConcreteMap::jacobian_determinant_at(const Point& at) const {
    return jacobian_determinant().evaluate(tilde_values(at));
}

Bindings ConcreteMap::symbolic_bindings() const {
    Bindings b;
    for (char c : {'x', 'y'})
        for (int i = 0; i <= kMaxPhiOrder; ++i)
            for (int j = 0; i + j <= kMaxPhiOrder; ++j)
                if (i + j > 0) b.emplace(map_derivative(c, i, j), RationalExpr(partial(c, i, j)));
    b.emplace(variable("x"), RationalExpr(chi));
    b.emplace(variable("y"), RationalExpr(psi));
    return b;
}

std::map<SymbolId, Rational> ConcreteMap::point_values(const Point& at) const {
    auto tv = tilde_values(at);
    std::map<SymbolId, Rational> out = tv;
    for (char c : {'x', 'y'})
        for (int i = 0; i <= kMaxPhiOrder; ++i)
            for (int j = 0; i + j <= kMaxPhiOrder; ++j)
                if (i + j > 0) out.emplace(map_derivative(c, i, j), partial(c, i, j).evaluate(tv));
    out.emplace(variable("x"), chi.evaluate(tv));
    out.emplace(variable("y"), psi.evaluate(tv));
    return out;
}

ConcreteMap compose(const ConcreteMap& inner, const ConcreteMap& outer) {
    Bindings b{{ConcreteMap::xt(), RationalExpr(outer.chi)}, {ConcreteMap::yt(), RationalExpr(outer.psi)}};
    ConcreteMap out;
    out.chi = substitute(inner.chi, b).num();
    out.psi = substitute(inner.psi, b).num();
    out.base = outer.base;
    return out;
}

} // namespace jetcalc
