#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jetcalc {

enum class SymbolKind : std::uint8_t {
    MapDerivative, // x_{i.j} or y_{i.j}: partial of the inverse map component
    Jet,           // y^(k) of the source equation, or the tilde jet of the target
    Coefficient,   // opaque class coefficient B, P, ..., Y (also used as its composition with the map)
    Variable,      // any other named indeterminate
};

struct SymbolInfo {
    SymbolKind kind;
    std::string name; // printed (and parseable) form
    char component = 0; // 'x' or 'y' for map derivatives
    int i = 0;
    int j = 0;
    int order = 0;      // jet order k
    bool tilde = false; // jet of the transformed equation
};

/// Handle into the process-wide append-only symbol table.  The numeric
/// value fixes the variable order used by the monomial ordering.
class SymbolId {
public:
    constexpr SymbolId() = default;
    constexpr explicit SymbolId(std::uint32_t index) : index_(index) {}

    constexpr std::uint32_t index() const noexcept { return index_; }

    const SymbolInfo& info() const;
    const std::string& name() const { return info().name; }

    friend constexpr auto operator<=>(SymbolId, SymbolId) = default;

private:
    std::uint32_t index_ = 0;
};

/// Order (i, j) multi-index bound: map derivatives exist for 1 <= i + j <= 3.
inline constexpr int kMaxPhiOrder = 3;

SymbolId map_derivative(char component, int i, int j);
SymbolId jet(int order, bool tilde);
/// One of the twelve class coefficient names (B P Q R S L K M N T X Y).
SymbolId coefficient(std::string_view name);
/// Named indeterminate; interned on first use.
SymbolId variable(std::string_view name);

/// Finds a symbol by its printed name without interning anything.
std::optional<SymbolId> lookup_symbol(std::string_view name);

/// Number of symbols interned so far.
std::size_t symbol_count();

inline constexpr std::string_view kCoefficientNames[] = {"B", "P", "Q", "R", "S", "L",
                                                         "K", "M", "N", "T", "X", "Y"};

} // namespace jetcalc

template <>
struct std::hash<jetcalc::SymbolId> {
    std::size_t operator()(jetcalc::SymbolId s) const noexcept { return s.index(); }
};
