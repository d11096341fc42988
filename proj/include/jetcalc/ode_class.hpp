#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "jetcalc/rational_expr.hpp"

namespace jetcalc {

/// The jet symbols an equation is written in: y', y'', y''' of the source
/// equation or the tilde jets of a transformed one.
struct JetVars {
    SymbolId first;
    SymbolId second;
    SymbolId third;

    static JetVars source() { return {jet(1, false), jet(2, false), jet(3, false)}; }
    static JetVars target() { return {jet(1, true), jet(2, true), jet(3, true)}; }
};

/// Projective 12-tuple (B, P, Q, R, S, L, K, M, N, T, X, Y) of the third-order
/// class  y''' = (B y''^2 + P y'' y'^2 + Q y'' y' + R y'' + S y'^5 + L y'^4
///                + K y'^3 + M y'^2 + N y' + T) / (Y - X y').
class OdeClassCoeffs {
public:
    enum Index : int { B, P, Q, R, S, L, K, M, N, T, X, Y };
    static constexpr std::size_t kCount = 12;

    OdeClassCoeffs() = default;
    /// Every entry is its own opaque coefficient symbol.
    static OdeClassCoeffs opaque(bool tied_b);

    RationalExpr& operator[](Index i) { return values_[static_cast<std::size_t>(i)]; }
    const RationalExpr& operator[](Index i) const { return values_[static_cast<std::size_t>(i)]; }
    /// Entry as it enters the equation: B reads as -3X when the tie is imposed.
    RationalExpr effective(Index i) const;

    bool tied_b() const { return tied_b_; }
    void set_tied_b(bool tied) { tied_b_ = tied; }

    /// Scaled so the entries are coprime polynomials with integer coefficients
    /// of collective content 1, and the first nonzero entry (in B..Y order) has
    /// a positive leading coefficient.  Throws DegenerateClass if X = Y = 0.
    OdeClassCoeffs gauge_canonical() const;

    static std::string_view name(Index i);

    friend bool operator==(const OdeClassCoeffs&, const OdeClassCoeffs&) = default;

private:
    std::array<RationalExpr, kCount> values_;
    bool tied_b_ = false;
};

/// Divides a tuple of expressions by a common factor so that the result is a
/// tuple of coprime integer-coefficient polynomials with collective integer
/// content 1 and a positive leading coefficient on the first nonzero entry.
/// Returns the tuple and the factor it was multiplied by.
std::pair<std::vector<RationalExpr>, RationalExpr> gauge_normalize(std::span<const RationalExpr> entries);

/// Two tuples describe the same equation iff they are proportional.
bool proportional(std::span<const RationalExpr> a, std::span<const RationalExpr> b);

} // namespace jetcalc
