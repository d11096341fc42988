#pragma once

#include <array>
#include <vector>

#include "jetcalc/rational_expr.hpp"

namespace jetcalc::jets {

/// Symbols of the jet calculus: inverse-map partials x_{i.j}, y_{i.j} with
/// 1 <= i+j <= 3, tilde jets y~', y~'', y~''', and the entries of the
/// direct Jacobian (registered, not consumed by any operation).
struct JetContext {
    static constexpr int max_phi_order = kMaxPhiOrder;

    static std::vector<SymbolId> phi_symbols();
    static SymbolId phi(char component, int i, int j) { return map_derivative(component, i, j); }
    static SymbolId jet(int order) { return jetcalc::jet(order, true); }
    static std::array<SymbolId, 4> direct_jacobian();
};

/// Shorthand for the expression x_{i.j} or y_{i.j}.
RationalExpr phi(char component, int i, int j);
/// det S = x_{1.0} y_{0.1} - x_{0.1} y_{1.0}.
RationalExpr jacobian_determinant();
/// D(x) = x_{1.0} + x_{0.1} y~'.
RationalExpr total_derivative_of_x();

/// Total derivative along a curve in the tilde plane:
///   D x_{i.j} = x_{i+1.j} + y~' x_{i.j+1},  D y~^(k) = y~^(k+1),
///   D x = x_{1.0} + y~' x_{0.1} (likewise y),  D xt = 1,  D yt = y~'.
/// Throws MaxOrderExceeded past the order budget and NonDifferentiableSymbol
/// for opaque coefficients or unrelated symbols.
RationalExpr total_derivative(const RationalExpr& e);
Polynomial total_derivative(const Polynomial& p);

struct Prolongation {
    int order = 0;
    RationalExpr yp;   // y'
    RationalExpr ypp;  // y'' (order >= 2)
    RationalExpr yppp; // y''' (order 3)
};

/// y^(k+1) = D(y^(k)) / D(x), starting from y' = D(y) / D(x).
Prolongation prolong(int order);
/// prolong(3), computed once per process.
const Prolongation& third_order_prolongation();

/// The eleven numerator coefficients of y''' over (x_{1.0} + x_{0.1} y~')^5.
/// a[0] is a1 (coefficient of y~''' and the only slot depending on y~').
struct CoefficientTable {
    std::array<RationalExpr, 11> a;

    const RationalExpr& operator[](int index1) const { return a.at(static_cast<std::size_t>(index1 - 1)); }
    RationalExpr& operator[](int index1) { return a.at(static_cast<std::size_t>(index1 - 1)); }

    /// Jet monomial multiplying slot i (1-based): y~''' for a1, y~''^2 for a2, ... , 1 for a11.
    static Monomial slot_monomial(int index1);
    /// (sum_i a_i * slot_i) / D(x)^5.
    RationalExpr reconstruct_yppp() const;
    friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;
};

/// Clears D(x)^5 from y''' and reads off the eleven slots; any other jet
/// monomial throws StructureViolation.
CoefficientTable extract_coefficients(const Prolongation& p);
const CoefficientTable& derived_coefficients();

} // namespace jetcalc::jets
