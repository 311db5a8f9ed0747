#pragma once

// Dense univariate polynomials over Q, used for root isolation.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "mdisc/error.hpp"
#include "mdisc/rational.hpp"

namespace mdisc {

/// Coefficients lowest degree first; no trailing zeros (zero polynomial is empty).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Rat>& coeffs() const noexcept { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    const Rat& lc() const { return c_.back(); }

    Rat eval(const Rat& x) const {
        Rat acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UPoly derivative() const {
        std::vector<Rat> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rat{static_cast<long>(i)});
        return UPoly(std::move(d));
    }

    UPoly monic() const {
        if (c_.empty()) return *this;
        UPoly r = *this;
        const Rat inv = Rat{1} / lc();
        for (auto& x : r.c_) x *= inv;
        return r;
    }

    /// Positive rational multiple with coprime integer coefficients.
    UPoly primitive() const {
        if (c_.empty()) return *this;
        BigInt g = 0;
        BigInt l = 1;
        for (const auto& x : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.raw().get_num_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
        }
        UPoly r = *this;
        const Rat scale(l, g);
        for (auto& x : r.c_) x *= scale;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UPoly(std::move(r));
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UPoly(std::move(r));
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    /// Euclidean division over Q.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw Error("polynomial division by zero");
        if (a.degree() < b.degree()) return {UPoly{}, a};
        std::vector<Rat> rem = a.c_;
        std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
        const Rat inv = Rat{1} / b.lc();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            const Rat q = rem[k + db] * inv;
            quo[k] = q;
            if (q.is_zero()) continue;
            for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.c_[j];
        }
        rem.resize(db);
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rat> c_;
};

/// Integer polynomial proportional to a UPoly by a positive factor; used for
/// fast exact sign evaluation.
class IntPoly {
public:
    explicit IntPoly(const UPoly& p) {
        BigInt l = 1;
        for (const auto& x : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
        a_.reserve(p.coeffs().size());
        for (const auto& x : p.coeffs()) a_.push_back(BigInt(x.raw().get_num() * (l / x.raw().get_den())));
    }

    long degree() const noexcept { return static_cast<long>(a_.size()) - 1; }
    int lc_sign() const { return a_.empty() ? 0 : sgn(a_.back()); }

    /// Sign of p(x) via sum a_i p^i q^(d-i) for x = p/q, q > 0.
    int sign_at(const Rat& x) const {
        if (a_.empty()) return 0;
        const mpz_class& p = x.raw().get_num();
        const mpz_class& q = x.raw().get_den();
        BigInt acc = a_.back();
        BigInt qpow = 1;
        for (std::size_t i = a_.size() - 1; i-- > 0;) {
            qpow *= q;
            acc = acc * p + a_[i] * qpow;
        }
        return sgn(acc);
    }

    /// Sign as x -> +inf (positive = true) or -inf.
    int sign_at_infinity(bool positive) const {
        const int s = lc_sign();
        return (positive || degree() % 2 == 0) ? s : -s;
    }

private:
    std::vector<BigInt> a_;
};

/// Monic gcd over Q (zero only when both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second.primitive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Yun's algorithm: p = lc * prod_i factors[i]^(i+1); factors[i] monic,
/// squarefree and pairwise coprime (possibly constant 1).
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
    if (p.is_zero()) throw Error("squarefree decomposition of the zero polynomial");
    std::vector<UPoly> out;
    if (p.degree() == 0) return out;
    const UPoly dp = p.derivative();
    UPoly a = gcd(p, dp);
    UPoly b = divmod(p, a).first;
    UPoly c = divmod(dp, a).first;
    UPoly d = c - b.derivative();
    while (b.degree() > 0) {
        a = gcd(b, d);
        out.push_back(a.monic());
        const UPoly nb = divmod(b, a).first;
        c = divmod(d, a).first;
        b = nb;
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

}  // namespace mdisc
