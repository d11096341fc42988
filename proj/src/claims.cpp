#include "jetcalc/claims.hpp"

#include <sstream>

#include "jetcalc/errors.hpp"
#include "jetcalc/oracle.hpp"

namespace jetcalc::claims {
namespace {

RationalExpr x(int i, int j) { return jets::phi('x', i, j); }
RationalExpr y(int i, int j) { return jets::phi('y', i, j); }
RationalExpr p() { return RationalExpr::symbol(jet(1, true)); }
RationalExpr q() { return RationalExpr::symbol(jet(2, true)); }
RationalExpr sq(const RationalExpr& e) { return e * e; }
RationalExpr coeff(std::string_view n) { return RationalExpr::symbol(coefficient(n)); }

ClaimedTable build_table() {
    ClaimedTable t;
    auto set = [&](int i, RationalExpr e, std::string note) {
        t.entries[static_cast<std::size_t>(i - 1)] = {std::move(e), std::move(note)};
    };
    set(1, -(x(1, 0) + x(0, 1) * p()) * (y(1, 0) * x(0, 1) - x(1, 0) * y(0, 1)),
        "multiplies yt3; the only entry depending on yt1");
    set(2, 3 * x(0, 1) * (y(1, 0) * x(0, 1) - x(1, 0) * y(0, 1)), "multiplies yt2^2");
    set(3,
        -6 * y(0, 1) * x(1, 0) * x(0, 2) - 3 * y(1, 1) * sq(x(0, 1)) + 3 * y(1, 0) * x(0, 2) * x(0, 1) +
            3 * y(0, 2) * x(1, 0) * x(0, 1) + 3 * y(0, 1) * x(1, 1) * x(0, 1),
        "multiplies yt2*yt1^2");
    set(4,
        9 * y(1, 0) * x(0, 1) * x(1, 1) - 3 * y(2, 0) * sq(x(0, 1)) + 3 * y(0, 1) * x(2, 0) * x(0, 1) +
            3 * y(0, 2) * sq(x(1, 0)) - 3 * y(1, 0) * x(0, 2) * x(1, 0) - 9 * y(0, 1) * x(1, 1) * x(1, 0),
        "multiplies yt2*yt1");
    set(5,
        -3 * y(1, 0) * x(1, 1) * x(1, 0) + 6 * y(1, 0) * x(2, 0) * x(0, 1) - 3 * y(0, 1) * x(1, 0) * x(2, 0) +
            3 * y(1, 1) * sq(x(1, 0)) - 3 * y(2, 0) * x(1, 0) * x(0, 1),
        "multiplies yt2; the printed index 'y_{1,0}' in the second term is read as y_1_0");
    set(6,
        3 * y(0, 1) * sq(x(0, 2)) - 3 * y(0, 2) * x(0, 1) * x(0, 2) + y(0, 3) * sq(x(0, 1)) -
            y(0, 1) * x(0, 3) * x(0, 1),
        "multiplies yt1^5");
    set(7,
        -3 * y(0, 1) * x(1, 2) * x(0, 1) - 3 * y(0, 2) * x(1, 0) * x(0, 2) - y(0, 1) * x(0, 3) * x(1, 0) -
            6 * y(1, 1) * x(0, 2) * x(0, 1) + 2 * y(0, 3) * x(1, 0) * x(0, 1) + 3 * y(1, 0) * sq(x(0, 2)) -
            y(1, 0) * x(0, 3) * x(0, 1) - 6 * y(0, 2) * x(1, 1) * x(0, 1) + 12 * y(0, 1) * x(1, 1) * x(0, 2) +
            3 * y(1, 2) * sq(x(0, 1)),
        "multiplies yt1^4");
    set(8,
        -3 * y(0, 1) * x(2, 1) * x(0, 1) - 6 * y(0, 2) * x(1, 1) * x(1, 0) - y(1, 0) * x(0, 3) * x(1, 0) -
            3 * y(0, 1) * x(1, 2) * x(1, 0) + 12 * y(0, 1) * sq(x(1, 1)) - 3 * y(0, 2) * x(2, 0) * x(0, 1) -
            3 * y(2, 0) * x(0, 2) * x(0, 1) - 6 * y(1, 1) * x(0, 2) * x(1, 0) + 6 * y(0, 1) * x(2, 0) * x(0, 2) -
            12 * y(1, 1) * x(0, 1) * x(1, 1) + 6 * y(1, 2) * x(1, 0) * x(0, 1) + y(0, 3) * sq(x(1, 0)) +
            3 * y(2, 1) * sq(x(0, 1)) - 3 * y(1, 0) * x(1, 2) * x(0, 1) + 12 * y(1, 0) * x(1, 1) * x(0, 2),
        "multiplies yt1^3");
    set(9,
        -3 * y(1, 0) * x(1, 2) * x(1, 0) + 12 * y(0, 1) * x(2, 0) * x(1, 1) + 3 * y(1, 2) * sq(x(1, 0)) +
            y(3, 0) * sq(x(0, 1)) - 6 * y(2, 0) * x(1, 1) * x(0, 1) - 3 * y(0, 1) * x(2, 1) * x(1, 0) -
            6 * y(1, 1) * x(2, 0) * x(0, 1) - 3 * y(1, 0) * x(2, 1) * x(0, 1) - y(0, 1) * x(3, 0) * x(0, 1) -
            3 * y(0, 2) * x(2, 0) * x(1, 0) + 6 * y(1, 0) * x(2, 0) * x(0, 2) + 6 * y(2, 1) * x(1, 0) * x(0, 1) -
            12 * y(1, 1) * x(1, 0) * x(1, 1) + 12 * y(1, 0) * sq(x(1, 1)) - 3 * y(2, 0) * x(0, 2) * x(1, 0),
        "multiplies yt1^2");
    set(10,
        -3 * y(2, 0) * x(0, 1) * x(2, 0) + 12 * y(1, 0) * x(2, 0) * x(1, 1) - 6 * y(2, 0) * x(1, 1) * x(1, 0) -
            6 * y(1, 1) * x(2, 0) * x(1, 0) - 3 * y(1, 0) * x(2, 1) * x(1, 0) - y(0, 1) * x(3, 0) * x(1, 0) +
            2 * y(3, 0) * x(1, 0) * x(0, 1) + 3 * y(0, 1) * sq(x(2, 0)) + 3 * y(2, 1) * sq(x(1, 0)) -
            y(1, 0) * x(3, 0) * x(0, 1),
        "multiplies yt1");
    set(11,
        -y(1, 0) * x(3, 0) * x(1, 0) + y(3, 0) * sq(x(1, 0)) + 3 * y(1, 0) * sq(x(2, 0)) -
            3 * y(2, 0) * x(1, 0) * x(2, 0),
        "jet-free term");
    return t;
}

RationalExpr jet_power(SymbolId s, int k) { return RationalExpr::symbol(s).pow(k); }

} // namespace

jets::CoefficientTable ClaimedTable::as_table() const {
    jets::CoefficientTable t;
    for (int i = 1; i <= 11; ++i) t[i] = (*this)[i].expr;
    return t;
}

std::string ClaimedTable::serialize() const {
    std::ostringstream os;
    for (int i = 1; i <= 11; ++i) os << 'a' << i << " = " << (*this)[i].expr.to_string() << '\n';
    return os.str();
}

std::uint64_t ClaimedTable::checksum() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

const ClaimedTable& claimed_coefficients() {
    static const ClaimedTable t = build_table();
    return t;
}

RationalExpr claimed_second_derivative() {
    const RationalExpr d = x(1, 0) + x(0, 1) * p();
    return (y(2, 0) + 2 * y(1, 1) * p() + y(0, 2) * sq(p()) + y(0, 1) * q()) / sq(d) -
           (y(1, 0) + y(0, 1) * p()) * (x(2, 0) + 2 * x(1, 1) * p() + x(0, 2) * sq(p()) + x(0, 1) * q()) /
               (sq(d) * d);
}

RationalExpr claimed_y3zero_transform(const jets::CoefficientTable& a) {
    const RationalExpr d = x(1, 0) + x(0, 1) * p();
    const RationalExpr minor = y(1, 0) * x(0, 1) - x(1, 0) * y(0, 1);
    RationalExpr rest = a[3] * q() * sq(p()) + a[4] * q() * p() + a[5] * q();
    for (int k = 5; k >= 0; --k) rest += a[11 - k] * p().pow(k);
    return 3 * x(0, 1) * sq(q()) / d + rest / (d * minor);
}

RationalExpr claimed_y3zero_transform() { return claimed_y3zero_transform(claimed_coefficients().as_table()); }

ClaimedResidueData claimed_residue_data() {
    const RationalExpr B = coeff("B"), X = coeff("X"), Y = coeff("Y");
    ClaimedResidueData d;
    d.b1 = 3 * x(0, 1) * (Y * x(0, 1) - X * y(0, 1));
    d.b2 = 3 * x(0, 1) * (Y * x(1, 0) - X * y(1, 0)) + B * (x(1, 0) * y(0, 1) - x(0, 1) * y(1, 0));
    d.omega = (B + 3 * X) * jets::jacobian_determinant();
    return d;
}

RationalExpr class_rhs(const OdeClassCoeffs& c, const JetVars& jets) {
    using I = OdeClassCoeffs;
    if (c[I::X].is_zero() && c[I::Y].is_zero()) throw DegenerateClass("X and Y are both identically zero");
    const SymbolId yp = jets.first, ypp = jets.second;
    const RationalExpr q2 = jet_power(ypp, 1);
    RationalExpr num = c.effective(I::B) * q2 * q2 + c[I::P] * q2 * jet_power(yp, 2) + c[I::Q] * q2 * jet_power(yp, 1) +
                       c[I::R] * q2;
    const I::Index pure[] = {I::S, I::L, I::K, I::M, I::N, I::T};
    for (int k = 0; k < 6; ++k) num += c[pure[k]] * jet_power(yp, 5 - k);
    return num / (c[I::Y] - c[I::X] * jet_power(yp, 1));
}

RationalExpr cubic_class_rhs(const std::array<RationalExpr, 4>& c, const JetVars& jets) {
    const RationalExpr p1 = jet_power(jets.first, 1);
    return c[0] + 3 * c[1] * p1 + 3 * c[2] * sq(p1) + c[3] * p1 * sq(p1);
}

RationalExpr point_expansion_rhs(const std::array<RationalExpr, 7>& c, const JetVars& jets) {
    if (c[5].is_zero() && c[6].is_zero()) throw DegenerateClass("X and Y are both identically zero");
    const RationalExpr p1 = jet_power(jets.first, 1);
    return (c[0] + 4 * c[1] * p1 + 6 * c[2] * sq(p1) + 4 * c[3] * p1 * sq(p1) + c[4] * sq(sq(p1))) /
           (c[6] - c[5] * p1);
}

// ------------------------------------------------------------ verification

std::string_view to_string(Arbitration a) {
    switch (a) {
    case Arbitration::NotNeeded: return "not-needed";
    case Arbitration::DerivedSupported: return "derived-supported";
    case Arbitration::ClaimedSupported: return "claimed-supported";
    case Arbitration::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

int VerificationReport::matches() const {
    int n = 0;
    for (const auto& c : checks) n += c.match ? 1 : 0;
    return n;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["matches"] = matches();
    j["total"] = checks.size();
    auto& arr = j["coefficients"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e{{"index", c.index}, {"status", c.match ? "match" : "mismatch"}};
        if (!c.match) {
            e["difference_terms"] = c.difference_terms;
            e["arbitration"] = std::string(to_string(c.verdict));
            e["oracle_cases"] = c.oracle_cases;
            e["derived_failures"] = c.derived_failures;
            e["claimed_failures"] = c.claimed_failures;
        }
        arr.push_back(std::move(e));
    }
    return j;
}

VerificationReport verify_prolongation(std::uint64_t seed, const jets::CoefficientTable& claimed) {
    const auto& derived = jets::derived_coefficients();
    VerificationReport report;
    report.seed = seed;
    for (int i = 1; i <= 11; ++i) {
        CoefficientCheck c;
        c.index = i;
        RationalExpr diff = derived[i] - claimed[i];
        c.match = diff.is_zero();
        if (!c.match) {
            for (const auto& t : diff.num().terms()) c.difference_terms.push_back(Polynomial::monomial(t.mono, t.coeff).to_string());
            // The claimed entry is tried in place of the derived one so each
            // verdict concerns a single coefficient.
            jets::CoefficientTable trial = derived;
            trial[i] = claimed[i];
            auto on_derived = oracle::run_prolongation_batch(seed, kArbitrationCases, derived);
            auto on_claimed = oracle::run_prolongation_batch(seed, kArbitrationCases, trial);
            c.oracle_cases = on_derived.cases;
            c.derived_failures = on_derived.cases - on_derived.passed;
            c.claimed_failures = on_claimed.cases - on_claimed.passed;
            if (c.derived_failures == 0 && c.claimed_failures > 0) c.verdict = Arbitration::DerivedSupported;
            else if (c.claimed_failures == 0 && c.derived_failures > 0) c.verdict = Arbitration::ClaimedSupported;
            else c.verdict = Arbitration::Inconclusive;
        }
        report.checks.push_back(std::move(c));
    }
    return report;
}

VerificationReport verify_prolongation(std::uint64_t seed) {
    return verify_prolongation(seed, claimed_coefficients().as_table());
}

} // namespace jetcalc::claims
