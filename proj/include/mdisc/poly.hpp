#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdisc/error.hpp"
#include "mdisc/rational.hpp"

namespace mdisc {

/// Ordered list of variable names. Polynomials share rings through RingPtr.
class Ring {
public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j]) throw Error("duplicate variable '" + names_[i] + "' in ring");
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (i != 0) out += ", ";
            out += names_[i];
        }
        return out;
    }

    friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

/// Exponent vector, one slot per ring variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
        degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }
    std::uint64_t total_degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    void set(std::size_t i, std::uint32_t e) {
        degree_ = degree_ - exps_[i] + e;
        exps_[i] = e;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
        r.degree_ += b.degree_;
        return r;
    }

    /// Requires b to divide a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
        r.degree_ -= b.degree_;
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

private:
    std::vector<std::uint32_t> exps_;
    std::uint64_t degree_ = 0;
};

/// Graded lexicographic comparison: total degree first, then the exponent of
/// the first ring variable, then the second, and so on.
inline int grlex_compare(const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

class MultiPoly {
public:
    using Term = std::pair<Monomial, Rat>;

    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly from_terms(RingPtr ring, std::vector<Term> terms) {
        MultiPoly p(std::move(ring));
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    static MultiPoly constant(RingPtr ring, const Rat& c) {
        MultiPoly p(ring);
        if (!c.is_zero()) p.terms_.emplace_back(Monomial(p.ring_->size()), c);
        return p;
    }

    static MultiPoly variable(RingPtr ring, std::size_t var) {
        if (var >= ring->size()) throw VariableAbsent("variable index out of range");
        Monomial m(ring->size());
        m.set(var, 1);
        MultiPoly p(std::move(ring));
        p.terms_.emplace_back(std::move(m), Rat{1});
        return p;
    }

    static MultiPoly variable(RingPtr ring, std::string_view name) {
        auto idx = ring->index_of(name);
        if (!idx) throw VariableAbsent("unknown variable '" + std::string(name) + "'");
        return variable(std::move(ring), *idx);
    }

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t nvars() const noexcept { return ring_ ? ring_->size() : 0; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

    /// Value of the constant term (zero when absent).
    Rat constant_term() const {
        if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
        return Rat{};
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw Error("leading term of the zero polynomial");
        return terms_.front();
    }

    long total_degree() const {
        return terms_.empty() ? -1 : static_cast<long>(terms_.front().first.total_degree());
    }

    bool uses_variable(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first[var] != 0; });
    }

    std::vector<std::size_t> variables_used() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nvars(); ++i)
            if (uses_variable(i)) out.push_back(i);
        return out;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    MultiPoly& operator*=(const Rat& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else {
            for (auto& t : terms_) t.second *= c;
        }
        return *this;
    }

    friend MultiPoly operator*(MultiPoly p, const Rat& c) { return p *= c; }
    friend MultiPoly operator*(const Rat& c, MultiPoly p) { return p *= c; }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_ring(a, b);
        if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring_);
        if (a.is_constant()) return b * a.terms_[0].second;
        if (b.is_constant()) return a * b.terms_[0].second;
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) prod.emplace_back(ma * mb, ca * cb);
        return from_terms(a.ring_, std::move(prod));
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    static void check_ring(const MultiPoly& a, const MultiPoly& b) {
        if (!same_ring(a.ring_, b.ring_))
            throw RingMismatch(a.ring_ ? a.ring_->to_string() : "<none>", b.ring_ ? b.ring_->to_string() : "<none>");
    }

private:
    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
        check_ring(a, b);
        MultiPoly r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size()) c = -1;
            else if (j == b.terms_.size()) c = 1;
            else c = grlex_compare(a.terms_[i].first, b.terms_[j].first);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                r.terms_.emplace_back(b.terms_[j].first, subtract ? -b.terms_[j].second : b.terms_[j].second);
                ++j;
            } else {
                Rat s = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
                if (!s.is_zero()) r.terms_.emplace_back(a.terms_[i].first, std::move(s));
                ++i;
                ++j;
            }
        }
        return r;
    }

    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return grlex_compare(x.first, y.first) > 0; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms_.size();) {
            std::size_t j = i + 1;
            Rat sum = std::move(terms_[i].second);
            while (j < terms_.size() && terms_[j].first == terms_[i].first) sum += terms_[j++].second;
            if (!sum.is_zero()) {
                if (out != i) terms_[out].first = std::move(terms_[i].first);
                terms_[out].second = std::move(sum);
                ++out;
            }
            i = j;
        }
        terms_.resize(out);
    }

    RingPtr ring_;
    std::vector<Term> terms_;  // strictly decreasing in grlex order, no zero coefficients
};

/// Raised by exact_divide when the divisor does not divide the dividend.
class NotDivisible : public Error {
public:
    explicit NotDivisible(MultiPoly remainder)
        : Error("exact division failed: nonzero remainder"), remainder_(std::move(remainder)) {}
    const MultiPoly& remainder() const noexcept { return remainder_; }

private:
    MultiPoly remainder_;
};

inline MultiPoly pow(const MultiPoly& base, unsigned e) {
    MultiPoly result = MultiPoly::constant(base.ring(), Rat{1});
    MultiPoly b = base;
    while (e != 0) {
        if (e & 1u) result *= b;
        e >>= 1u;
        if (e != 0) b = b * b;
    }
    return result;
}

/// Highest exponent of `var`; -1 for the zero polynomial.
inline long degree_in(const MultiPoly& p, std::size_t var) {
    if (p.is_zero()) return -1;
    std::uint32_t d = 0;
    for (const auto& t : p.terms()) d = std::max(d, t.first[var]);
    return d;
}

inline MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
    if (var >= p.nvars()) throw VariableAbsent("variable index out of range");
    std::vector<MultiPoly::Term> out;
    for (const auto& [m, c] : p.terms()) {
        const std::uint32_t e = m[var];
        if (e == 0) continue;
        Monomial dm = m;
        dm.set(var, e - 1);
        out.emplace_back(std::move(dm), c * Rat{static_cast<long>(e)});
    }
    return MultiPoly::from_terms(p.ring(), std::move(out));
}

/// p with `var` replaced by a rational value.
inline MultiPoly substitute(const MultiPoly& p, std::size_t var, const Rat& value) {
    if (var >= p.nvars()) throw VariableAbsent("variable index out of range");
    std::vector<MultiPoly::Term> out;
    out.reserve(p.num_terms());
    for (const auto& [m, c] : p.terms()) {
        const std::uint32_t e = m[var];
        if (e == 0) {
            out.emplace_back(m, c);
            continue;
        }
        Rat coeff = c * pow(value, e);
        if (coeff.is_zero()) continue;
        Monomial dm = m;
        dm.set(var, 0);
        out.emplace_back(std::move(dm), std::move(coeff));
    }
    return MultiPoly::from_terms(p.ring(), std::move(out));
}

/// Coefficients of p viewed as a polynomial in `var`: slot k holds the
/// coefficient of var^k. Empty for the zero polynomial.
inline std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
    const long deg = degree_in(p, var);
    std::vector<std::vector<MultiPoly::Term>> buckets(static_cast<std::size_t>(deg + 1));
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        rest.set(var, 0);
        buckets[m[var]].emplace_back(std::move(rest), c);
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(MultiPoly::from_terms(p.ring(), std::move(b)));
    return out;
}

/// p with `var` replaced by a polynomial that does not involve `var`.
inline MultiPoly substitute(const MultiPoly& p, std::size_t var, const MultiPoly& value) {
    MultiPoly::check_ring(p, value);
    if (var >= p.nvars()) throw VariableAbsent("variable index out of range");
    if (value.uses_variable(var))
        throw Error("substituted value contains the variable '" + p.ring()->name(var) + "'");
    if (p.is_zero()) return p;
    const auto coeffs = coefficients_in(p, var);
    MultiPoly acc(p.ring());
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * value + coeffs[k];
    return acc;
}

inline Rat evaluate(const MultiPoly& p, std::span<const Rat> point) {
    if (point.size() != p.nvars()) throw Error("evaluation point has wrong dimension");
    Rat acc;
    for (const auto& [m, c] : p.terms()) {
        Rat t = c;
        for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
            if (m[i] != 0) t *= pow(point[i], m[i]);
        acc += t;
    }
    return acc;
}

/// Quotient q with q*d == p. Throws NotDivisible carrying the remainder otherwise.
inline MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& d) {
    MultiPoly::check_ring(p, d);
    if (d.is_zero()) throw Error("division by the zero polynomial");
    if (d.is_constant()) return p * (Rat{1} / d.terms()[0].second);

    const auto& [lead_m, lead_c] = d.leading_term();
    const Rat inv_lead = Rat{1} / lead_c;
    std::map<Monomial, Rat, GrlexGreater> rem;
    for (const auto& t : p.terms()) rem.emplace(t.first, t.second);

    std::vector<MultiPoly::Term> quotient;
    std::vector<MultiPoly::Term> remainder;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (!lead_m.divides(it->first)) {
            // Not reducible: move to the remainder and keep going to report all of it.
            remainder.emplace_back(it->first, it->second);
            rem.erase(it);
            continue;
        }
        Monomial qm = it->first / lead_m;
        Rat qc = it->second * inv_lead;
        for (const auto& [dm, dc] : d.terms()) {
            Monomial m = qm * dm;
            Rat delta = qc * dc;
            auto [pos, inserted] = rem.try_emplace(std::move(m));
            pos->second -= delta;
            if (pos->second.is_zero()) rem.erase(pos);
        }
        quotient.emplace_back(std::move(qm), std::move(qc));
    }
    if (!remainder.empty()) throw NotDivisible(MultiPoly::from_terms(p.ring(), std::move(remainder)));
    return MultiPoly::from_terms(p.ring(), std::move(quotient));
}

/// Positive rational c such that p / c has coprime integer coefficients
/// (1 for the zero polynomial).
inline Rat integer_content(const MultiPoly& p) {
    if (p.is_zero()) return Rat{1};
    BigInt g = 0;
    BigInt l = 1;
    for (const auto& t : p.terms()) {
        const mpq_class& q = t.second.raw();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    return Rat(g, l);
}

inline MultiPoly strip_integer_content(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p * (Rat{1} / integer_content(p));
}

/// Re-expresses p over a ring whose variables include all of p's variables.
inline MultiPoly change_ring(const MultiPoly& p, const RingPtr& target) {
    std::vector<std::size_t> map(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        auto idx = target->index_of(p.ring()->name(i));
        if (!idx) {
            if (p.uses_variable(i))
                throw RingMismatch(p.ring()->to_string(), target->to_string());
            map[i] = target->size();
        } else {
            map[i] = *idx;
        }
    }
    std::vector<MultiPoly::Term> out;
    out.reserve(p.num_terms());
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::uint32_t> e(target->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) e[map[i]] = m[i];
        out.emplace_back(Monomial(std::move(e)), c);
    }
    return MultiPoly::from_terms(target, std::move(out));
}

/// Coefficients of a polynomial that involves at most `var`, lowest degree first.
inline std::vector<Rat> univariate_coefficients(const MultiPoly& p, std::size_t var) {
    for (std::size_t i = 0; i < p.nvars(); ++i)
        if (i != var && p.uses_variable(i))
            throw Error("polynomial is not univariate in '" + p.ring()->name(var) + "'");
    std::vector<Rat> out(static_cast<std::size_t>(std::max<long>(degree_in(p, var) + 1, 0)));
    for (const auto& [m, c] : p.terms()) out[m[var]] = c;
    return out;
}

}  // namespace mdisc
