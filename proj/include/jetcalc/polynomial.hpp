#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/symbol.hpp"

namespace jetcalc {

using Rational = mpq_class;

/// Power product of symbols.  Factors are kept sorted by symbol id with
/// strictly positive exponents; the empty product is the unit monomial.
class Monomial {
public:
    using Factor = std::pair<SymbolId, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(SymbolId s, std::uint32_t exponent = 1);
    /// Factors may arrive in any order and may repeat; zero exponents are dropped.
    static Monomial from_factors(std::span<const Factor> factors);

    std::span<const Factor> factors() const { return {factors_.data(), factors_.size()}; }
    bool is_unit() const { return factors_.empty(); }
    std::uint32_t degree() const { return degree_; }
    std::uint32_t degree(SymbolId s) const;

    /// Exact quotient, or nullopt when `divisor` does not divide *this.
    std::optional<Monomial> divide(const Monomial& divisor) const;
    bool divisible_by(const Monomial& divisor) const;

    /// Splits into (part over `vars`, remaining part).  `vars` must be sorted.
    std::pair<Monomial, Monomial> split(std::span<const SymbolId> vars) const;
    Monomial without(SymbolId s) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
    /// Graded lexicographic: total degree first, then the lower symbol id is the larger variable.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

    std::size_t hash() const noexcept;
    std::string to_string() const;

private:
    boost::container::small_vector<Factor, 6> factors_;
    std::uint32_t degree_ = 0;
};

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Sparse multivariate polynomial over Q in canonical form: terms sorted by
/// strictly descending monomial, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long c); // NOLINT(google-explicit-constructor)
    Polynomial(const Rational& c); // NOLINT(google-explicit-constructor)
    static Polynomial variable(SymbolId s, std::uint32_t exponent = 1);
    static Polynomial monomial(Monomial m, Rational c = 1);
    /// Canonicalizes an arbitrary list of terms (sorts and combines).
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit()); }
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rational constant_value() const;
    const Term& leading() const { return terms_.front(); }
    const Rational& leading_coeff() const { return terms_.front().coeff; }

    std::uint32_t degree(SymbolId s) const;
    std::uint32_t total_degree() const;
    /// Sorted list of symbols that occur.
    std::vector<SymbolId> variables() const;
    bool depends_on(SymbolId s) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
    Polynomial scaled(const Rational& c) const;
    Polynomial times_monomial(const Monomial& m, const Rational& c = 1) const;
    Polynomial pow(unsigned e) const;

    /// Coefficients as a univariate polynomial in s, index = degree.
    std::vector<Polynomial> as_univariate(SymbolId s) const;
    static Polynomial from_univariate(std::span<const Polynomial> coeffs, SymbolId s);

    Polynomial derivative(SymbolId s) const;
    /// Full evaluation; every occurring symbol must be bound.
    Rational evaluate(const std::map<SymbolId, Rational>& values) const;

    /// Same polynomial divided by its leading coefficient (zero stays zero).
    Polynomial monic() const;
    /// Scales to integer coefficients with gcd 1 and a positive leading coefficient.
    Polynomial primitive_integer() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt if b does not divide a.  b must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor, normalized to leading coefficient 1 (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd of a whole list, folded from the smallest operand up.
Polynomial gcd(std::span<const Polynomial> polys);

} // namespace jetcalc
