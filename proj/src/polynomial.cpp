#include "jetcalc/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "jetcalc/errors.hpp"

namespace jetcalc {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(SymbolId s, std::uint32_t exponent) {
    if (exponent > 0) {
        factors_.emplace_back(s, exponent);
        degree_ = exponent;
    }
}

Monomial Monomial::from_factors(std::span<const Factor> factors) {
    Monomial m;
    m.factors_.assign(factors.begin(), factors.end());
    std::sort(m.factors_.begin(), m.factors_.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    decltype(m.factors_) merged;
    for (const auto& f : m.factors_) {
        if (f.second == 0) continue;
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(f);
    }
    m.factors_ = std::move(merged);
    m.degree_ = 0;
    for (const auto& f : m.factors_) m.degree_ += f.second;
    return m;
}

std::uint32_t Monomial::degree(SymbolId s) const {
    for (const auto& f : factors_)
        if (f.first == s) return f.second;
    return 0;
}

bool Monomial::divisible_by(const Monomial& d) const {
    if (d.degree_ > degree_) return false;
    std::size_t i = 0;
    for (const auto& f : d.factors_) {
        while (i < factors_.size() && factors_[i].first < f.first) ++i;
        if (i == factors_.size() || factors_[i].first != f.first || factors_[i].second < f.second) return false;
        ++i;
    }
    return true;
}

std::optional<Monomial> Monomial::divide(const Monomial& d) const {
    if (!divisible_by(d)) return std::nullopt;
    Monomial q;
    std::size_t j = 0;
    for (const auto& f : factors_) {
        std::uint32_t e = f.second;
        if (j < d.factors_.size() && d.factors_[j].first == f.first) {
            e -= d.factors_[j].second;
            ++j;
        }
        if (e > 0) q.factors_.emplace_back(f.first, e);
    }
    q.degree_ = degree_ - d.degree_;
    return q;
}

std::pair<Monomial, Monomial> Monomial::split(std::span<const SymbolId> vars) const {
    Monomial in, out;
    for (const auto& f : factors_) {
        Monomial& dst = std::binary_search(vars.begin(), vars.end(), f.first) ? in : out;
        dst.factors_.push_back(f);
        dst.degree_ += f.second;
    }
    return {std::move(in), std::move(out)};
}

Monomial Monomial::without(SymbolId s) const {
    Monomial m;
    for (const auto& f : factors_) {
        if (f.first == s) continue;
        m.factors_.push_back(f);
        m.degree_ += f.second;
    }
    return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.factors_.reserve(a.factors_.size() + b.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
        const auto& fa = a.factors_[i];
        const auto& fb = b.factors_[j];
        if (fa.first < fb.first) {
            m.factors_.push_back(fa);
            ++i;
        } else if (fb.first < fa.first) {
            m.factors_.push_back(fb);
            ++j;
        } else {
            m.factors_.emplace_back(fa.first, fa.second + fb.second);
            ++i;
            ++j;
        }
    }
    for (; i < a.factors_.size(); ++i) m.factors_.push_back(a.factors_[i]);
    for (; j < b.factors_.size(); ++j) m.factors_.push_back(b.factors_[j]);
    m.degree_ = a.degree_ + b.degree_;
    return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    std::size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& fa = a.factors_[k];
        const auto& fb = b.factors_[k];
        if (fa.first != fb.first)
            return fa.first < fb.first ? std::strong_ordering::greater : std::strong_ordering::less;
        if (fa.second != fb.second) return fa.second <=> fb.second;
    }
    return a.factors_.size() <=> b.factors_.size();
}

std::size_t Monomial::hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (const auto& f : factors_) {
        h ^= (static_cast<std::size_t>(f.first.index()) << 8) ^ f.second;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string Monomial::to_string() const {
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += '*';
        s += f.first.name();
        if (f.second > 1) s += "^" + std::to_string(f.second);
    }
    return s.empty() ? "1" : s;
}

// -------------------------------------------------------------- Polynomial

namespace {

Rational pow_rational(const Rational& q, std::uint32_t e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return r;
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto c = a[i].mono <=> b[j].mono;
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (subtract) out.back().coeff = -out.back().coeff;
        } else {
            Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        out.push_back(b[j]);
        if (subtract) out.back().coeff = -out.back().coeff;
    }
    return out;
}

// Product of a[lo, hi) with b by recursive halving and merging.
Polynomial multiply_range(const std::vector<Term>& a, std::size_t lo, std::size_t hi, const Polynomial& b) {
    if (hi - lo == 1) return b.times_monomial(a[lo].mono, a[lo].coeff);
    std::size_t mid = lo + (hi - lo) / 2;
    return multiply_range(a, lo, mid, b) + multiply_range(a, mid, hi, b);
}

} // namespace

Polynomial::Polynomial(long c) {
    if (c != 0) terms_.push_back({Monomial(), Rational(c)});
}

Polynomial::Polynomial(const Rational& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(SymbolId s, std::uint32_t exponent) {
    Polynomial p;
    p.terms_.push_back({Monomial(s, exponent), Rational(1)});
    return p;
}

Polynomial Polynomial::monomial(Monomial m, Rational c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    Polynomial p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    return p;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("constant_value() of a non-constant polynomial");
    return terms_[0].coeff;
}

std::uint32_t Polynomial::degree(SymbolId s) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(s));
    return d;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::vector<SymbolId> Polynomial::variables() const {
    std::vector<SymbolId> vs;
    for (const auto& t : terms_)
        for (const auto& f : t.mono.factors()) vs.push_back(f.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool Polynomial::depends_on(SymbolId s) const {
    for (const auto& t : terms_)
        if (t.mono.degree(s) > 0) return true;
    return false;
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    p.terms_ = merge_terms(a.terms_, b.terms_, false);
    return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    p.terms_ = merge_terms(a.terms_, b.terms_, true);
    return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() > b.size()) return multiply_range(b.terms_, 0, b.size(), a);
    return multiply_range(a.terms_, 0, a.size(), b);
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (sgn(c) == 0) return {};
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
    if (sgn(c) == 0) return {};
    Polynomial p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
    return p;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

std::vector<Polynomial> Polynomial::as_univariate(SymbolId s) const {
    std::vector<std::vector<Term>> buckets(degree(s) + 1);
    for (const auto& t : terms_) {
        auto e = t.mono.degree(s);
        buckets[e].push_back({t.mono.without(s), t.coeff});
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    // Removing one variable keeps the relative order of the remaining monomials
    // within a bucket, so each bucket is already canonical.
    for (auto& b : buckets) {
        Polynomial p;
        p.terms_ = std::move(b);
        out.push_back(std::move(p));
    }
    return out;
}

Polynomial Polynomial::from_univariate(std::span<const Polynomial> coeffs, SymbolId s) {
    Polynomial p;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        if (coeffs[e].is_zero()) continue;
        p += coeffs[e].times_monomial(Monomial(s, static_cast<std::uint32_t>(e)));
    }
    return p;
}

Polynomial Polynomial::derivative(SymbolId s) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        auto e = t.mono.degree(s);
        if (e == 0) continue;
        Monomial m = t.mono.without(s) * Monomial(s, e - 1);
        out.push_back({std::move(m), t.coeff * e});
    }
    return from_terms(std::move(out));
}

Rational Polynomial::evaluate(const std::map<SymbolId, Rational>& values) const {
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational v = t.coeff;
        for (const auto& [s, e] : t.mono.factors()) {
            auto it = values.find(s);
            if (it == values.end()) throw std::invalid_argument("no value bound for symbol '" + s.name() + "'");
            v *= pow_rational(it->second, e);
        }
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty() || terms_[0].coeff == 1) return *this;
    Rational inv = 1 / terms_[0].coeff;
    return scaled(inv);
}

Polynomial Polynomial::primitive_integer() const {
    if (terms_.empty()) return {};
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& t : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
    Rational factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (sgn(terms_[0].coeff) < 0) factor = -factor;
    return scaled(factor);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].mono == b.terms_[i].mono)) return false;
    return true;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        Rational mag = abs(t.coeff);
        bool neg = sgn(t.coeff) < 0;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        if (t.mono.is_unit()) {
            s += mag.get_str();
        } else {
            if (mag != 1) s += mag.get_str() + "*";
            s += t.mono.to_string();
        }
    }
    return s;
}

// ---------------------------------------------------------- exact division

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.is_zero()) return Polynomial();
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    if (a.total_degree() < b.total_degree()) return std::nullopt;
    for (const auto& f : b.leading().mono.factors())
        if (a.degree(f.first) < f.second) return std::nullopt;

    const Term& lead = b.leading();
    if (b.size() == 1) {
        std::vector<Term> q;
        q.reserve(a.size());
        for (const auto& t : a.terms()) {
            auto m = t.mono.divide(lead.mono);
            if (!m) return std::nullopt;
            q.push_back({std::move(*m), t.coeff / lead.coeff});
        }
        return Polynomial::from_terms(std::move(q));
    }

    std::map<Monomial, Rational, MonomialGreater> rem;
    for (const auto& t : a.terms()) rem.emplace(t.mono, t.coeff);
    std::vector<Term> quotient;
    while (!rem.empty()) {
        auto it = rem.begin();
        auto qm = it->first.divide(lead.mono);
        if (!qm) return std::nullopt;
        Rational qc = it->second / lead.coeff;
        rem.erase(it);
        for (std::size_t k = 1; k < b.size(); ++k) {
            const Term& bt = b.terms()[k];
            Monomial m = *qm * bt.mono;
            Rational delta = qc * bt.coeff;
            auto [pos, inserted] = rem.try_emplace(std::move(m), 0);
            pos->second -= delta;
            if (sgn(pos->second) == 0) rem.erase(pos);
        }
        quotient.push_back({std::move(*qm), std::move(qc)});
    }
    // Leading monomials of successive remainders strictly decrease, so the
    // quotient terms are produced in canonical order.
    return Polynomial::from_terms(std::move(quotient));
}

} // namespace jetcalc
