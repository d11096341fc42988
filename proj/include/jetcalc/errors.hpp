#pragma once

#include <stdexcept>
#include <string>

namespace jetcalc {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Division by an expression that canonicalizes to zero.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A substitution made a denominator vanish identically.
class DegenerateSubstitution : public Error {
public:
    using Error::Error;
};

/// collect() was asked to group by a variable that occurs in the denominator.
class NotPolynomialInVars : public Error {
public:
    using Error::Error;
};

/// residue_simple_pole() on a denominator of degree > 1 in the pole variable.
class UnsupportedPole : public Error {
public:
    using Error::Error;
};

/// Total derivative would need a map derivative beyond the order budget.
class MaxOrderExceeded : public Error {
public:
    using Error::Error;
};

/// Total derivative requested for an opaque composed coefficient or a foreign symbol.
class NonDifferentiableSymbol : public Error {
public:
    using Error::Error;
};

/// The cleared third derivative has a monomial outside the eleven slots.
class StructureViolation : public Error {
public:
    using Error::Error;
};

class DegenerateClass : public Error {
public:
    using Error::Error;
};

/// The map has det S == 0 (identically, or at the working point).
class DegenerateMap : public Error {
public:
    using Error::Error;
};

/// A concrete oracle sample hit a pole or a vertical tangent; callers resample.
class DegenerateSample : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace jetcalc
