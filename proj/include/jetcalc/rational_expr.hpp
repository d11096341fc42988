#pragma once

#include <map>
#include <span>
#include <string>

#include "jetcalc/polynomial.hpp"

namespace jetcalc {

/// Reduced fraction of polynomials.  Invariants: the denominator is nonzero,
/// gcd(num, den) is a unit, and the denominator's leading coefficient is 1.
/// Canonical forms make structural equality coincide with equality of the
/// rational functions.
class RationalExpr {
public:
    RationalExpr() : den_(1) {}
    RationalExpr(long c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    RationalExpr(const Rational& c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    RationalExpr(Polynomial p) : num_(std::move(p)), den_(1) {} // NOLINT(google-explicit-constructor)
    /// Throws DomainError when `den` is the zero polynomial.
    static RationalExpr fraction(Polynomial num, Polynomial den);
    /// For num and den already known to be coprime: only normalizes the
    /// denominator to be monic.
    static RationalExpr coprime_fraction(Polynomial num, Polynomial den);
    static RationalExpr symbol(SymbolId s) { return RationalExpr(Polynomial::variable(s)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value(); }
    bool depends_on(SymbolId s) const { return num_.depends_on(s) || den_.depends_on(s); }
    std::vector<SymbolId> variables() const;

    RationalExpr operator-() const;
    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    /// Throws DomainError when b is zero.
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
    RationalExpr& operator+=(const RationalExpr& b) { return *this = *this + b; }
    RationalExpr& operator-=(const RationalExpr& b) { return *this = *this - b; }
    RationalExpr& operator*=(const RationalExpr& b) { return *this = *this * b; }
    RationalExpr& operator/=(const RationalExpr& b) { return *this = *this / b; }
    /// Negative exponents invert (DomainError on zero).
    RationalExpr pow(int e) const;

    /// Canonical forms compare structurally.
    friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    /// Equality by cross-multiplication; agrees with == on canonical values.
    bool cross_equal(const RationalExpr& other) const;

    /// Full evaluation; throws DegenerateSample when the denominator vanishes.
    Rational evaluate(const std::map<SymbolId, Rational>& values) const;

    std::string to_string() const;

private:
    Polynomial num_;
    Polynomial den_;
};

using Bindings = std::map<SymbolId, RationalExpr>;

/// Simultaneous substitution of symbols by expressions.  Throws
/// DegenerateSubstitution if the denominator becomes zero.
RationalExpr substitute(const RationalExpr& e, const Bindings& bindings);
RationalExpr substitute(const Polynomial& p, const Bindings& bindings);

using Collected = std::map<Monomial, RationalExpr, MonomialGreater>;

/// Groups e by monomials in `vars`.  Throws NotPolynomialInVars when the
/// denominator involves any of them.
Collected collect(const RationalExpr& e, std::span<const SymbolId> vars);

/// Residue of f at the single pole of its denominator, taken as a function of z
/// over the field of the other symbols.  A z-free denominator has no pole and
/// yields 0; degree >= 2 throws UnsupportedPole.
RationalExpr residue_simple_pole(const RationalExpr& f, SymbolId z);

} // namespace jetcalc
