#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mdisc/error.hpp"

namespace mdisc {

using BigInt = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (zero is 0/1).
class Rat {
public:
    Rat() = default;
    Rat(long v) : q_(v) {}                 // NOLINT(google-explicit-constructor)
    Rat(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit Rat(const BigInt& v) : q_(v) {}
    Rat(const BigInt& num, const BigInt& den) {
        if (den == 0) throw Error("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "a" or "a/b" with optional leading sign.
    static Rat parse(std::string_view text) {
        mpq_class q;
        if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
            throw Error("malformed rational literal '" + std::string(text) + "'");
        q.canonicalize();
        return Rat(std::move(q));
    }

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const noexcept { return q_; }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    bool is_one() const noexcept { return q_ == 1; }
    bool is_integer() const noexcept { return q_.get_den() == 1; }
    int sign() const noexcept { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    long double to_long_double() const {
        // mpq get_d truncates to double; recover a few extra bits for long double.
        const double hi = q_.get_d();
        mpq_class rest = q_ - mpq_class(hi);
        return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
    }

    std::string str() const { return q_.get_str(10); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw Error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

inline Rat pow(Rat base, unsigned e) {
    Rat result{1};
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e != 0) base *= base;
    }
    return result;
}

/// Exact conversion of a finite double.
inline Rat from_double(double d) { return Rat(mpq_class(d)); }

}  // namespace mdisc
