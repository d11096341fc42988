#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetcalc/jets.hpp"
#include "jetcalc/ode_class.hpp"

namespace jetcalc::claims {

/// Hand transcription of the published closed forms, kept separate from the
/// derivation so the two can be compared.

struct ClaimedEntry {
    RationalExpr expr;
    std::string note; // which jet monomial the entry multiplies, and transcription remarks
};

struct ClaimedTable {
    std::array<ClaimedEntry, 11> entries;

    const ClaimedEntry& operator[](int index1) const { return entries.at(static_cast<std::size_t>(index1 - 1)); }
    jets::CoefficientTable as_table() const;
    /// One record per line: "a<i> = <canonical form>".
    std::string serialize() const;
    /// 64-bit FNV-1a of serialize().
    std::uint64_t checksum() const;
};

/// The published coefficients a1..a11 of the y''' rule.
const ClaimedTable& claimed_coefficients();

/// The published second-derivative rule, in tilde jets and map partials.
RationalExpr claimed_second_derivative();

/// The published transform of y''' = 0, built from a coefficient table
/// (the claimed one by default).
RationalExpr claimed_y3zero_transform(const jets::CoefficientTable& table);
RationalExpr claimed_y3zero_transform();

/// The published numerator coefficients of the y~''^2 term of a transformed
/// class member, (B1~ + B2~ z) over (x_1_0 + x_0_1 z), and the published
/// closed form of the residue of that function.
struct ClaimedResidueData {
    RationalExpr b1;
    RationalExpr b2;
    RationalExpr omega;
};
ClaimedResidueData claimed_residue_data();

/// (B y''^2 + P y'' y'^2 + Q y'' y' + R y'' + S y'^5 + L y'^4 + K y'^3 + M y'^2
///  + N y' + T) / (Y - X y') in the given jet symbols, with B read as -3X when
/// the tie is set.  Throws DegenerateClass if X = Y = 0.
RationalExpr class_rhs(const OdeClassCoeffs& c, const JetVars& jets = JetVars::source());

/// y'' = P + 3Q y' + 3R y'^2 + S y'^3.
RationalExpr cubic_class_rhs(const std::array<RationalExpr, 4>& pqrs, const JetVars& jets = JetVars::source());
/// y'' = (P + 4Q y' + 6R y'^2 + 4S y'^3 + L y'^4) / (Y - X y'); entries ordered P Q R S L X Y.
RationalExpr point_expansion_rhs(const std::array<RationalExpr, 7>& entries, const JetVars& jets = JetVars::source());

// ------------------------------------------------------------ verification

enum class Arbitration { NotNeeded, DerivedSupported, ClaimedSupported, Inconclusive };
std::string_view to_string(Arbitration a);

struct CoefficientCheck {
    int index = 0; // 1-based
    bool match = false;
    std::vector<std::string> difference_terms; // monomials of derived - claimed
    Arbitration verdict = Arbitration::NotNeeded;
    int oracle_cases = 0;
    int derived_failures = 0;
    int claimed_failures = 0;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CoefficientCheck> checks;

    int matches() const;
    bool all_match() const { return matches() == static_cast<int>(checks.size()); }
    nlohmann::json to_json() const;
};

inline constexpr int kArbitrationCases = 24;

/// Compares the derived coefficient table with `claimed` entry by entry and,
/// for each mismatch, lets the exact oracle decide which side is right.
VerificationReport verify_prolongation(std::uint64_t seed, const jets::CoefficientTable& claimed);
VerificationReport verify_prolongation(std::uint64_t seed);

} // namespace jetcalc::claims
