#pragma once

#include <optional>
#include <utility>

#include "jetcalc/rational_expr.hpp"

namespace jetcalc {

using Point = std::pair<Rational, Rational>;

/// A polynomial point transformation in the inverse-function convention:
/// x = chi(xt, yt), y = psi(xt, yt).
struct ConcreteMap {
    Polynomial chi;
    Polynomial psi;
    std::optional<Point> base; // working point (xt0, yt0)

    static ConcreteMap identity();
    /// x = yt, y = xt.
    static ConcreteMap swap();

    /// d^(i+j) component / dxt^i dyt^j as a polynomial in xt, yt ('x' for chi, 'y' for psi).
    Polynomial partial(char component, int i, int j) const;
    Rational partial_at(char component, int i, int j, const Point& at) const;
    /// Jacobian determinant chi_xt psi_yt - chi_yt psi_xt.
    Polynomial jacobian_determinant() const;
    Rational jacobian_determinant_at(const Point& at) const;

    /// Map partials x_i_j, y_i_j and the plain symbols x, y bound to their
    /// polynomial values in xt, yt.
    Bindings symbolic_bindings() const;
    /// Same, evaluated at a point; also binds xt, yt to the point.
    std::map<SymbolId, Rational> point_values(const Point& at) const;

    Point image(const Point& at) const { return {chi.evaluate(tilde_values(at)), psi.evaluate(tilde_values(at))}; }

    static SymbolId xt();
    static SymbolId yt();
    static std::map<SymbolId, Rational> tilde_values(const Point& at);
};

/// The map from the coordinates of `outer` to the original ones when `inner`
/// is applied first: x = inner.chi(outer.chi, outer.psi), likewise y.
ConcreteMap compose(const ConcreteMap& inner, const ConcreteMap& outer);

} // namespace jetcalc
