#include "jetcalc/oracle.hpp"

#include "jetcalc/errors.hpp"

namespace jetcalc::oracle {

Rational ConcreteCurve::operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Rational ConcreteCurve::derivative(int k, const Rational& t) const {
    // Coefficients of the k-th derivative, then Horner.
    Rational acc = 0;
    for (std::size_t n = coeffs.size(); n-- > static_cast<std::size_t>(k);) {
        Rational falling = 1;
        for (int m = 0; m < k; ++m) falling *= static_cast<long>(n) - m;
        acc = acc * t + coeffs[n] * falling;
    }
    return acc;
}

// ------------------------------------------------------------------ series

Series Series::constant(const Rational& v) {
    Series s;
    s.c[0] = v;
    return s;
}

Series Series::linear(const Rational& v0, const Rational& v1) {
    Series s;
    s.c[0] = v0;
    s.c[1] = v1;
    return s;
}

Series operator+(const Series& a, const Series& b) {
    Series r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

Series operator-(const Series& a, const Series& b) {
    Series r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

Series operator*(const Series& a, const Series& b) {
    Series r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; i + j < 4; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Series Series::scaled(const Rational& k) const {
    Series r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = c[i] * k;
    return r;
}

Series compose(const Polynomial& p, const Series& xt, const Series& yt) {
    const SymbolId sx = ConcreteMap::xt(), sy = ConcreteMap::yt();
    // Cache powers; degrees here are small.
    std::vector<Series> xp{Series::constant(1)}, yp{Series::constant(1)};
    Series acc;
    for (const auto& t : p.terms()) {
        std::uint32_t ex = 0, ey = 0;
        for (const auto& [s, e] : t.mono.factors()) {
            if (s == sx) ex = e;
            else if (s == sy) ey = e;
            else throw DomainError("map polynomial involves '" + s.name() + "'; only xt and yt are allowed");
        }
        while (xp.size() <= ex) xp.push_back(xp.back() * xt);
        while (yp.size() <= ey) yp.push_back(yp.back() * yt);
        acc = acc + (xp[ex] * yp[ey]).scaled(t.coeff);
    }
    return acc;
}

JetValues jets_of_parametrized(const Series& x, const Series& y) {
    const Rational& x1 = x.c[1];
    if (sgn(x1) == 0) throw DegenerateSample("vertical tangent: dx/dt vanishes at the sample");
    const Rational x2 = 2 * x.c[2], x3 = 6 * x.c[3];
    const Rational& y1 = y.c[1];
    const Rational y2 = 2 * y.c[2], y3 = 6 * y.c[3];
    const Rational n2 = y2 * x1 - y1 * x2;
    const Rational n3 = y3 * x1 - y1 * x3;
    const Rational x1sq = x1 * x1;
    JetValues j;
    j.y1 = y1 / x1;
    j.y2 = n2 / (x1sq * x1);
    j.y3 = (n3 * x1 - 3 * x2 * n2) / (x1sq * x1sq * x1);
    return j;
}

JetValues parametric_jets(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0) {
    Series t = Series::linear(xt0, 1);
    Series phi;
    Rational factorial = 1;
    for (int k = 0; k < 4; ++k) {
        if (k > 0) factorial *= k;
        phi.c[static_cast<std::size_t>(k)] = curve.derivative(k, xt0) / factorial;
    }
    return jets_of_parametrized(compose(map.chi, t, phi), compose(map.psi, t, phi));
}

JetValues parametric_jets(const ConcreteMap& map, const ConcreteCurve& curve) {
    if (!map.base) throw DomainError("map has no basepoint");
    if (curve(map.base->first) != map.base->second) throw DomainError("curve does not pass through the basepoint");
    return parametric_jets(map, curve, map.base->first);
}

std::map<SymbolId, Rational> sample_values(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0) {
    auto values = map.point_values({xt0, curve(xt0)});
    for (int k = 1; k <= 3; ++k) values[jet(k, true)] = curve.derivative(k, xt0);
    return values;
}

// ------------------------------------------------------------------ checks

CaseComparison compare_at(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0,
                          const jets::CoefficientTable& table) {
    CaseComparison out;
    out.chain_rule = parametric_jets(map, curve, xt0);
    auto values = sample_values(map, curve, xt0);
    const auto& pr = jets::third_order_prolongation();
    out.symbolic.y1 = pr.yp.evaluate(values);
    out.symbolic.y2 = pr.ypp.evaluate(values);
    const Rational d = jets::total_derivative_of_x().evaluate(values);
    if (sgn(d) == 0) throw DegenerateSample("x_1_0 + x_0_1 yt1 vanishes at the sample");
    Rational num = 0;
    for (int i = 1; i <= 11; ++i) {
        Polynomial m = Polynomial::monomial(jets::CoefficientTable::slot_monomial(i));
        num += table[i].evaluate(values) * m.evaluate(values);
    }
    Rational d5 = d * d;
    d5 = d5 * d5 * d;
    out.symbolic.y3 = num / d5;
    return out;
}

bool check_table_at(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0,
                    const jets::CoefficientTable& table) {
    return compare_at(map, curve, xt0, table).agree();
}

bool check_prolongation_at(const ConcreteMap& map, const ConcreteCurve& curve, const Rational& xt0) {
    return check_table_at(map, curve, xt0, jets::derived_coefficients());
}

namespace {

// Tilde-plane series (u, v) of the curve whose image under the map is
// x = s0 + t, y = parabola(s0 + t), with (u, v)(0) = b.
std::pair<Series, Series> preimage_series(const ConcreteMap& map, const ConcreteCurve& parabola, const Point& b) {
    const Rational a = map.partial_at('x', 1, 0, b), bb = map.partial_at('x', 0, 1, b);
    const Rational c = map.partial_at('y', 1, 0, b), d = map.partial_at('y', 0, 1, b);
    const Rational det = a * d - bb * c;
    if (sgn(det) == 0) throw DegenerateSample("det S vanishes at the sample");

    auto [s0, y0] = map.image(b);
    Series target_x = Series::linear(s0, 1);
    Series target_y;
    Rational factorial = 1;
    for (int k = 0; k < 4; ++k) {
        if (k > 0) factorial *= k;
        target_y.c[static_cast<std::size_t>(k)] = parabola.derivative(k, s0) / factorial;
    }
    target_y.c[0] = y0; // shift so the image curve passes through the image of b

    Series u = Series::constant(b.first), v = Series::constant(b.second);
    for (std::size_t k = 1; k < 4; ++k) {
        const Rational r1 = target_x.c[k] - compose(map.chi, u, v).c[k];
        const Rational r2 = target_y.c[k] - compose(map.psi, u, v).c[k];
        u.c[k] = (r1 * d - bb * r2) / det;
        v.c[k] = (a * r2 - r1 * c) / det;
    }
    return {u, v};
}

} // namespace

Rational y3zero_residual(const ConcreteMap& map, const ConcreteCurve& parabola, const Point& b,
                         const RationalExpr& rhs) {
    if (parabola.coeffs.size() > 3) throw DomainError("the original-coordinate curve must have degree <= 2");
    auto [u, v] = preimage_series(map, parabola, b);
    JetValues tilde = jets_of_parametrized(u, v);
    auto values = map.point_values(b);
    values[jet(1, true)] = tilde.y1;
    values[jet(2, true)] = tilde.y2;
    return tilde.y3 - rhs.evaluate(values);
}

bool check_y3zero_mapping(const ConcreteMap& map, const ConcreteCurve& parabola, const std::vector<Point>& samples,
                          const RationalExpr& rhs) {
    int usable = 0;
    for (const auto& b : samples) {
        Rational r;
        try {
            r = y3zero_residual(map, parabola, b, rhs);
        } catch (const DegenerateSample&) {
            continue;
        }
        ++usable;
        if (sgn(r) != 0) return false;
    }
    if (usable == 0) throw DegenerateSample("every sample is degenerate");
    return true;
}

// ---------------------------------------------------------------- sampling

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

long draw(std::mt19937_64& rng, long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng() % span);
}

ConcreteMap random_map(std::mt19937_64& rng, int max_degree) {
    const SymbolId sx = ConcreteMap::xt(), sy = ConcreteMap::yt();
    auto component = [&] {
        std::vector<Term> terms;
        for (int a = 0; a <= max_degree; ++a)
            for (int b = 0; a + b <= max_degree; ++b) {
                if (draw(rng, 0, 1) == 0) continue;
                long c = draw(rng, -9, 9);
                if (c == 0) continue;
                Monomial m = Monomial(sx, static_cast<std::uint32_t>(a)) * Monomial(sy, static_cast<std::uint32_t>(b));
                terms.push_back({m, Rational(c)});
            }
        return Polynomial::from_terms(std::move(terms));
    };
    ConcreteMap m;
    m.chi = component();
    m.psi = component();
    return m;
}

ConcreteCurve random_curve(std::mt19937_64& rng, int max_degree) {
    ConcreteCurve c;
    for (int k = 0; k <= max_degree; ++k) c.coeffs.emplace_back(draw(rng, -9, 9));
    return c;
}

ProlongationCase random_prolongation_case(std::uint64_t seed, std::uint64_t index) {
    auto rng = case_rng(seed, index);
    for (int attempt = 1; attempt <= kMaxResample; ++attempt) {
        ProlongationCase pc;
        pc.map = random_map(rng, 3);
        pc.curve = random_curve(rng, 5);
        pc.xt0 = draw(rng, -3, 3);
        pc.attempts = attempt;
        const Point b{pc.xt0, pc.curve(pc.xt0)};
        pc.map.base = b;
        if (sgn(pc.map.jacobian_determinant_at(b)) == 0) continue;
        const Rational dx = pc.map.partial_at('x', 1, 0, b) + pc.map.partial_at('x', 0, 1, b) * pc.curve.derivative(1, pc.xt0);
        if (sgn(dx) == 0) continue;
        return pc;
    }
    throw DegenerateSample("no nondegenerate prolongation case after " + std::to_string(kMaxResample) + " attempts");
}

Y3ZeroCase random_y3zero_case(std::uint64_t seed, std::uint64_t index, int samples) {
    auto rng = case_rng(seed, index);
    for (int attempt = 1; attempt <= kMaxResample; ++attempt) {
        Y3ZeroCase yc;
        yc.map = random_map(rng, 2);
        yc.parabola = random_curve(rng, 2);
        for (int s = 0; s < samples; ++s) {
            Point b{draw(rng, -3, 3), draw(rng, -3, 3)};
            try {
                auto [u, v] = preimage_series(yc.map, yc.parabola, b);
                jets_of_parametrized(u, v);
            } catch (const DegenerateSample&) {
                continue;
            }
            yc.samples.push_back(b);
        }
        if (static_cast<int>(yc.samples.size()) == samples) {
            yc.map.base = yc.samples.front();
            return yc;
        }
    }
    throw DegenerateSample("no nondegenerate y''' = 0 case after " + std::to_string(kMaxResample) + " attempts");
}

BatchResult run_prolongation_batch(std::uint64_t seed, int cases, const jets::CoefficientTable& table) {
    BatchResult r;
    for (int i = 0; i < cases; ++i) {
        auto pc = random_prolongation_case(seed, static_cast<std::uint64_t>(i));
        r.resamples += pc.attempts - 1;
        ++r.cases;
        auto cmp = compare_at(pc.map, pc.curve, pc.xt0, table);
        if (cmp.agree()) {
            ++r.passed;
            continue;
        }
        r.failures.push_back("case " + std::to_string(i) + ": x = " + pc.map.chi.to_string() +
                             ", y = " + pc.map.psi.to_string() + ", xt0 = " + pc.xt0.get_str() +
                             "; symbolic y''' = " + cmp.symbolic.y3.get_str() +
                             ", chain rule y''' = " + cmp.chain_rule.y3.get_str());
    }
    return r;
}

BatchResult run_prolongation_batch(std::uint64_t seed, int cases) {
    return run_prolongation_batch(seed, cases, jets::derived_coefficients());
}

BatchResult run_y3zero_batch(std::uint64_t seed, int cases, const RationalExpr& rhs) {
    BatchResult r;
    for (int i = 0; i < cases; ++i) {
        auto yc = random_y3zero_case(seed, static_cast<std::uint64_t>(i));
        ++r.cases;
        bool ok = true;
        for (const auto& b : yc.samples) {
            Rational res = y3zero_residual(yc.map, yc.parabola, b, rhs);
            if (sgn(res) != 0) {
                ok = false;
                r.failures.push_back("case " + std::to_string(i) + ": residual " + res.get_str() + " at (" +
                                     b.first.get_str() + ", " + b.second.get_str() + ")");
                break;
            }
        }
        if (ok) ++r.passed;
    }
    return r;
}

jets::CoefficientTable corrupt(const jets::CoefficientTable& table, int index1) {
    jets::CoefficientTable out = table;
    out[index1] += jets::phi('x', 1, 0).pow(2) + jets::phi('y', 0, 1).pow(2) + RationalExpr(1);
    return out;
}

} // namespace jetcalc::oracle
