#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jetcalc/concrete_map.hpp"
#include "jetcalc/jets.hpp"

namespace jetcalc::oracle {

/// Exact chain-rule evaluation of jets along concrete curves.  Only the map
/// polynomials, the curve and univariate series arithmetic enter; the closed
/// forms of the prolongation are never consulted.

/// yt = phi(xt), coefficients by ascending degree.
struct ConcreteCurve {
    std::vector<Rational> coeffs;

    Rational operator()(const Rational& t) const;
    /// k-th derivative at t.
    Rational derivative(int k, const Rational& t) const;
};

struct JetValues {
    Rational y1, y2, y3;
    friend bool operator==(const JetValues&, const JetValues&) = default;
};

/// Power series in epsilon truncated after epsilon^3.
struct Series {
    std::array<Rational, 4> c{};

    static Series constant(const Rational& v);
    static Series linear(const Rational& v0, const Rational& v1);
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series scaled(const Rational& k) const;
};

/// A polynomial in xt, yt evaluated on series arguments.
Series compose(const Polynomial& p, const Series& xt, const Series& yt);

/// Jets y', y'', y''' at epsilon = 0 of the curve parametrized by (X(eps), Y(eps)).
/// Throws DegenerateSample when dX/deps vanishes (vertical tangent).
JetValues jets_of_parametrized(const Series& x, const Series& y);

/// Jets of the image (x, y) = (chi, psi)(xt, phi(xt)) at xt = xt0.
JetValues parametric_jets(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0);
/// Uses map.base; the curve must pass through it.
JetValues parametric_jets(const ConcreteMap& map, const ConcreteCurve& curve);

/// Values of the tilde jets of `curve` and the map partials at (xt0, phi(xt0)).
std::map<SymbolId, Rational> sample_values(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0);

struct CaseComparison {
    JetValues symbolic;
    JetValues chain_rule;
    bool agree() const { return symbolic == chain_rule; }
};

/// Evaluates the symbolic prolongation (y''' through `table`) at a concrete
/// sample and compares with the chain-rule values.  Throws DegenerateSample at
/// poles of the symbolic formula.
CaseComparison compare_at(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0,
                          const jets::CoefficientTable& table);
bool check_prolongation_at(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0);
bool check_table_at(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0,
                    const jets::CoefficientTable& table);

/// Residual y~''' - rhs at a basepoint `b` of the tilde plane for the curve
/// whose original-coordinate image is the parabola shifted to pass through
/// the image of b.  `rhs` may involve map partials, x, y, xt, yt, yt1, yt2.
Rational y3zero_residual(const ConcreteMap& map, const ConcreteCurve& parabola, const Point& b,
                         const RationalExpr& rhs);
/// True iff the residual vanishes at every sample; degenerate samples are
/// skipped, and DegenerateSample is thrown if all of them are degenerate.
bool check_y3zero_mapping(const ConcreteMap& map, const ConcreteCurve& parabola, const std::vector<Point>& samples,
                          const RationalExpr& rhs);

// ---------------------------------------------------------------- sampling

inline constexpr int kMaxResample = 100;

/// Deterministic generator for case `index` of a run seeded with `seed`.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index);
long draw(std::mt19937_64& rng, long lo, long hi);

/// chi, psi of total degree <= max_degree with integer coefficients in [-9, 9].
ConcreteMap random_map(std::mt19937_64& rng, int max_degree = 3);
ConcreteCurve random_curve(std::mt19937_64& rng, int max_degree = 5);

struct ProlongationCase {
    ConcreteMap map;
    ConcreteCurve curve;
    Rational xt0;
    int attempts = 0;
};

/// A random (map, curve, abscissa) with det S != 0 and no pole of the
/// prolongation at the sample; throws DegenerateSample after kMaxResample attempts.
ProlongationCase random_prolongation_case(std::uint64_t seed, std::uint64_t index);

struct Y3ZeroCase {
    ConcreteMap map;
    ConcreteCurve parabola;
    std::vector<Point> samples;
};
Y3ZeroCase random_y3zero_case(std::uint64_t seed, std::uint64_t index, int samples = 3);

struct BatchResult {
    int cases = 0;
    int passed = 0;
    int resamples = 0;
    std::vector<std::string> failures;
    bool all_passed() const { return passed == cases; }
};

BatchResult run_prolongation_batch(std::uint64_t seed, int cases, const jets::CoefficientTable& table);
BatchResult run_prolongation_batch(std::uint64_t seed, int cases);
BatchResult run_y3zero_batch(std::uint64_t seed, int cases, const RationalExpr& rhs);

/// Returns `table` with a_index replaced by a_index + x_1_0^2 + y_0_1^2 + 1.
jets::CoefficientTable corrupt(const jets::CoefficientTable& table, int index1);

} // namespace jetcalc::oracle
