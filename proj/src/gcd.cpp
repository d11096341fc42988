// Multivariate gcd over Q by recursive content / primitive part.
//
// The engine's denominators are small products of a handful of linear
// factors while numerators carry dozens of symbols, so the cheap reductions
// come first: monomial content, trial division, and splitting off symbols
// that occur on one side only.  What is left goes through a subresultant
// remainder sequence in one main variable with coefficients in the
// remaining ones.

#include <algorithm>
#include <map>
#include <optional>

#include "jetcalc/errors.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {
namespace {

using UPoly = std::vector<Polynomial>; // index = degree; top entry nonzero

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

Monomial monomial_content(const Polynomial& p) {
    const auto first = p.terms().front().mono.factors();
    std::vector<Monomial::Factor> common(first.begin(), first.end());
    for (const auto& t : p.terms()) {
        if (common.empty()) break;
        std::vector<Monomial::Factor> next;
        for (const auto& [s, e] : common) {
            auto d = t.mono.degree(s);
            if (d > 0) next.emplace_back(s, std::min(e, d));
        }
        common = std::move(next);
    }
    return Monomial::from_factors(common);
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    std::vector<Monomial::Factor> out;
    for (const auto& [s, e] : a.factors()) {
        auto d = b.degree(s);
        if (d > 0) out.emplace_back(s, std::min(e, d));
    }
    return Monomial::from_factors(out);
}

Polynomial strip_monomial(const Polynomial& p, const Monomial& m) {
    if (m.is_unit()) return p;
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back({*t.mono.divide(m), t.coeff});
    return Polynomial::from_terms(std::move(out));
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("gcd: expected exact division failed");
    return std::move(*q);
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Polynomial content_of(const UPoly& p) {
    std::vector<Polynomial> nz;
    for (const auto& c : p)
        if (!c.is_zero()) nz.push_back(c);
    return gcd(std::span<const Polynomial>(nz));
}

UPoly divide_coefficients(const UPoly& p, const Polynomial& d) {
    if (d.is_constant() && d.constant_value() == 1) return p;
    UPoly out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(exact(c, d));
    return out;
}

// prem(A, B) = lc(B)^(deg A - deg B + 1) * A  mod  B
UPoly pseudo_remainder(UPoly r, const UPoly& b) {
    const int n = degree(b);
    const Polynomial& lb = b.back();
    int e = degree(r) - n + 1;
    while (!r.empty() && degree(r) >= n) {
        Polynomial lr = r.back();
        const int shift = degree(r) - n;
        for (auto& c : r) c = c * lb;
        for (int k = 0; k <= n; ++k) r[k + shift] -= lr * b[k];
        trim(r);
        --e;
    }
    if (e > 0) {
        Polynomial f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : r) c = c * f;
    }
    return r;
}

// Subresultant remainder sequence on primitive inputs; returns the primitive gcd.
UPoly subresultant_gcd(UPoly a, UPoly b) {
    if (degree(a) < degree(b)) std::swap(a, b);
    Polynomial g(1), h(1);
    while (true) {
        const int delta = degree(a) - degree(b);
        UPoly r = pseudo_remainder(a, b);
        if (r.empty()) return divide_coefficients(b, content_of(b));
        if (degree(r) == 0) return {Polynomial(1)};
        a = std::move(b);
        b = divide_coefficients(r, g * h.pow(static_cast<unsigned>(delta)));
        g = a.back();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
}

SymbolId pick_main_variable(const Polynomial& a, const Polynomial& b, const std::vector<SymbolId>& vars) {
    SymbolId best = vars.front();
    std::uint32_t best_deg = ~0u;
    for (auto v : vars) {
        std::uint32_t d = std::max(a.degree(v), b.degree(v));
        if (d < best_deg) {
            best = v;
            best_deg = d;
        }
    }
    return best;
}

using QPoly = std::vector<Rational>; // dense univariate over Q, index = degree

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Degree of the monic Euclidean gcd over Q.
int euclid_degree(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        while (a.size() >= b.size()) {
            const Rational q = a.back() / b.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= q * b[k];
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// Upper bound for deg_v gcd(a, b) from an image at a point where both leading
// coefficients survive; nullopt when no such point was found quickly.
std::optional<int> image_gcd_degree(const UPoly& a, const UPoly& b, const std::vector<SymbolId>& others) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::map<SymbolId, Rational> at;
        for (auto s : others) at[s] = Rational(static_cast<long>((s.index() * 7919u + 31u * attempt + 17u) % 89u) + 2);
        if (a.back().evaluate(at) == 0 || b.back().evaluate(at) == 0) continue;
        QPoly ia, ib;
        for (const auto& c : a) ia.push_back(c.evaluate(at));
        for (const auto& c : b) ib.push_back(c.evaluate(at));
        return euclid_degree(std::move(ia), std::move(ib));
    }
    return std::nullopt;
}

Polynomial gcd_univariate(const Polynomial& a, const Polynomial& b, SymbolId v, const std::vector<SymbolId>& vars) {
    UPoly ua = a.as_univariate(v);
    UPoly ub = b.as_univariate(v);
    Polynomial ca = content_of(ua);
    Polynomial cb = content_of(ub);
    Polynomial c = gcd_impl(ca, cb);
    UPoly pa = divide_coefficients(ua, ca);
    UPoly pb = divide_coefficients(ub, cb);
    std::vector<SymbolId> others;
    for (auto s : vars)
        if (s != v) others.push_back(s);
    // A constant image gcd means the primitive parts are coprime.
    if (image_gcd_degree(pa, pb, others) == 0) return c;
    UPoly g = subresultant_gcd(std::move(pa), std::move(pb));
    // Subresultant coefficients are far from minimal; folds over many operands
    // must not carry them forward.
    return c * Polynomial::from_univariate(g, v).primitive_integer();
}

// gcd(a, b) where the sorted symbols `extra` occur in a but not in b.
Polynomial gcd_by_coefficients(const Polynomial& a, const std::vector<SymbolId>& extra, const Polynomial& b) {
    std::map<Monomial, std::vector<Term>, MonomialGreater> groups;
    for (const auto& t : a.terms()) {
        auto [in, out] = t.mono.split(extra);
        groups[in].push_back({std::move(out), t.coeff});
    }
    std::vector<Polynomial> coeffs;
    coeffs.reserve(groups.size());
    for (auto& [m, terms] : groups) coeffs.push_back(Polynomial::from_terms(std::move(terms)));
    std::sort(coeffs.begin(), coeffs.end(),
              [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
    Polynomial g = b;
    for (const auto& c : coeffs) {
        if (divide_exact(c, g)) continue;
        g = gcd_impl(g, c);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    if (b.size() <= a.size()) {
        if (divide_exact(a, b)) return b;
    } else if (divide_exact(b, a)) {
        return a;
    }
    auto va = a.variables();
    auto vb = b.variables();
    std::vector<SymbolId> only_a, only_b, shared;
    std::set_difference(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(only_a));
    if (!only_a.empty()) return gcd_by_coefficients(a, only_a, b);
    std::set_difference(vb.begin(), vb.end(), va.begin(), va.end(), std::back_inserter(only_b));
    if (!only_b.empty()) return gcd_by_coefficients(b, only_b, a);
    return gcd_univariate(a, b, pick_main_variable(a, b, va), va);
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    Monomial ma = monomial_content(a);
    Monomial mb = monomial_content(b);
    Polynomial g = gcd_primitive(strip_monomial(a, ma), strip_monomial(b, mb));
    Monomial mg = monomial_gcd(ma, mb);
    return mg.is_unit() ? g : g.times_monomial(mg);
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) { return gcd_impl(a, b).monic(); }

Polynomial gcd(std::span<const Polynomial> polys) {
    std::vector<const Polynomial*> order;
    for (const auto& p : polys)
        if (!p.is_zero()) order.push_back(&p);
    if (order.empty()) return {};
    std::sort(order.begin(), order.end(), [](const Polynomial* x, const Polynomial* y) { return x->size() < y->size(); });
    Polynomial g = *order.front();
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (g.is_constant()) break;
        if (divide_exact(*order[k], g)) continue;
        g = gcd_impl(g, *order[k]);
    }
    return g.is_constant() ? Polynomial(1) : g.monic();
}

} // namespace jetcalc
