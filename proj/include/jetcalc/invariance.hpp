#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "jetcalc/concrete_map.hpp"
#include "jetcalc/errors.hpp"
#include "jetcalc/ode_class.hpp"

namespace jetcalc::invariance {

/// The point transformation with every map partial kept symbolic.
struct GeneralMap {};
using MapSpec = std::variant<GeneralMap, ConcreteMap>;

/// y~''' of the transformed equation y''' = f(x, y, y', y'').  Coefficient
/// symbols in f stand for their composition with the map and are carried
/// over unchanged; under a concrete map x, y and the map partials become
/// polynomials in xt, yt.  Throws DegenerateMap when the map is degenerate
/// (identically or at its basepoint).
RationalExpr transform_equation(const RationalExpr& f, const MapSpec& map);

/// y~'' of the transformed second-order equation y'' = f(x, y, y').
RationalExpr transform_second_order(const RationalExpr& f, const MapSpec& map);

/// Renames x, y, y1, y2, y3 to xt, yt, yt1, yt2, yt3, and back.
RationalExpr to_target_names(const RationalExpr& e);
RationalExpr to_source_names(const RationalExpr& e);

// ------------------------------------------------------------- membership

struct MembershipResult {
    bool in_class = false;
    std::optional<OdeClassCoeffs> coeffs;     // gauge-canonical, when in class
    std::vector<std::string> obstructions;    // human-readable reasons
    std::vector<std::string> offending_terms; // jet monomials outside the allowed support
    std::optional<RationalExpr> residue;      // residue of the yt2^2 coefficient at the spurious pole
    std::optional<RationalExpr> pole_factor;  // the spurious linear factor of the denominator

    nlohmann::json to_json() const;
};

/// Decides whether g = N / (Y - X p) with N supported on
/// {q^2, q p^2, q p, q, p^5, ..., 1}, where p, q are the first and second
/// jets of `jets`; with `require_tied` also B + 3X = 0.
MembershipResult class_membership(const RationalExpr& g, const JetVars& jets = JetVars::target(),
                                  bool require_tied = false);

/// Second-order analogues.  Coefficients are listed P Q R S for the cubic
/// class and P Q R S L X Y for the point-expansion class.
struct SecondOrderMembership {
    bool in_class = false;
    std::vector<std::string> names;
    std::vector<RationalExpr> coeffs;
    std::vector<std::string> obstructions;
};
SecondOrderMembership cubic_membership(const RationalExpr& g, const JetVars& jets = JetVars::target());
SecondOrderMembership point_expansion_membership(const RationalExpr& g, const JetVars& jets = JetVars::target());

// -------------------------------------------------------------- residue

/// The yt2^2 term of a transformed class member, written as
/// (B1 + B2 z) / ((Y~ - X~ z)(x_1_0 + x_0_1 z)) with Y~ - X~ yt1 = (Y - X y') (x_1_0 + x_0_1 yt1),
/// and the residue omega of f(z) = (B1 + B2 z) / (x_1_0 + x_0_1 z) at its pole.
struct ResidueObstruction {
    RationalExpr b1;
    RationalExpr b2;
    RationalExpr f; // in z
    RationalExpr omega;
};
ResidueObstruction residue_obstruction();

// -------------------------------------------------------------- closure

struct CoefficientLaw {
    std::string name;
    RationalExpr value;
};

struct ClosureCertificate {
    std::string description;
    std::string provenance;
    std::vector<CoefficientLaw> laws;
    std::vector<std::pair<std::string, bool>> verified;

    bool all_verified() const;
    nlohmann::json to_json() const;
};

class ClosureRefuted : public Error {
public:
    ClosureRefuted(const std::string& what, MembershipResult result, std::optional<RationalExpr> gauge_factor)
        : Error(what), result_(std::move(result)), gauge_factor_(std::move(gauge_factor)) {}
    const MembershipResult& result() const { return result_; }
    /// residue / ((B + 3X) det S), when a residue obstruction was found.
    const std::optional<RationalExpr>& gauge_factor() const { return gauge_factor_; }

private:
    MembershipResult result_;
    std::optional<RationalExpr> gauge_factor_;
};

/// Transforms the general third-order class member under the general map and
/// certifies that the result lies in the same class.  With `tie_b` the member
/// has B = -3X; without it the check is expected to throw ClosureRefuted.
ClosureCertificate third_order_closure_check(bool tie_b = true);

/// Cubic class and point-expansion class under the general map, and y'' = 0
/// under the swap map.
std::vector<ClosureCertificate> second_order_closure_checks();

} // namespace jetcalc::invariance
