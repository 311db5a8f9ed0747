#pragma once

// Exact real root isolation with Sturm sequences.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mdisc/upoly.hpp"

namespace mdisc {

struct IsolatedRoot {
    enum class Kind { ExactRational, Interval };

    Kind kind = Kind::ExactRational;
    Rat value;  // ExactRational
    Rat lower;  // Interval: open interval (lower, upper) holding exactly one root
    Rat upper;
    int multiplicity = 1;

    static IsolatedRoot exact(Rat v, int mult) {
        IsolatedRoot r;
        r.kind = Kind::ExactRational;
        r.lower = r.upper = v;
        r.value = std::move(v);
        r.multiplicity = mult;
        return r;
    }

    static IsolatedRoot interval(Rat lo, Rat hi, int mult) {
        IsolatedRoot r;
        r.kind = Kind::Interval;
        r.value = (lo + hi) / Rat{2};
        r.lower = std::move(lo);
        r.upper = std::move(hi);
        r.multiplicity = mult;
        return r;
    }

    bool is_exact() const noexcept { return kind == Kind::ExactRational; }
    /// Exact value, or the interval midpoint.
    const Rat& representative() const noexcept { return value; }
    double approx() const { return value.to_double(); }
};

struct RootIsolation {
    std::vector<IsolatedRoot> roots;  // increasing
    long nonreal_count = 0;           // counted with multiplicity
};

/// Sturm sequence of a squarefree polynomial, each member scaled by a
/// positive constant to coprime integers.
class SturmSequence {
public:
    explicit SturmSequence(const UPoly& p) {
        UPoly a = p.primitive();
        UPoly b = p.derivative().primitive();
        seq_.emplace_back(a);
        while (!b.is_zero()) {
            seq_.emplace_back(b);
            UPoly r = (-divmod(a, b).second).primitive();
            a = std::move(b);
            b = std::move(r);
        }
    }

    const IntPoly& head() const { return seq_.front(); }

    int variations_at(const Rat& x) const {
        return count([&](const IntPoly& s) { return s.sign_at(x); });
    }

    int variations_at_infinity(bool positive) const {
        return count([&](const IntPoly& s) { return s.sign_at_infinity(positive); });
    }

    /// Distinct real roots in (a, b] for a < b.
    int roots_between(const Rat& a, const Rat& b) const { return variations_at(a) - variations_at(b); }

    int total_real_roots() const { return variations_at_infinity(false) - variations_at_infinity(true); }

private:
    template <class SignFn>
    int count(SignFn sign) const {
        int changes = 0;
        int last = 0;
        for (const auto& s : seq_) {
            const int v = sign(s);
            if (v == 0) continue;
            if (last != 0 && v != last) ++changes;
            last = v;
        }
        return changes;
    }

    std::vector<IntPoly> seq_;
};

namespace detail {

inline Rat floor_rat(const Rat& x) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return Rat(f);
}

/// Rational with the smallest denominator in the open interval (a, b), a < b.
inline Rat simplest_between(const Rat& a, const Rat& b) {
    if (a.sign() < 0 && b.sign() > 0) return Rat{0};
    if (b.sign() <= 0) return -simplest_between(-b, -a);
    const Rat fa = floor_rat(a);
    const Rat n = fa + Rat{1};
    if (n < b) return n;
    // No integer inside: (a, b) lies within [fa, fa + 1].
    const Rat lo = Rat{1} / (b - fa);
    if (a == fa) return fa + Rat{1} / (floor_rat(lo) + Rat{1});
    const Rat hi = Rat{1} / (a - fa);
    return fa + Rat{1} / simplest_between(lo, hi);
}

/// 2^k >= Cauchy bound 1 + max |a_i / a_n|; every real root lies strictly inside.
inline Rat root_bound(const UPoly& p) {
    Rat m;
    for (long i = 0; i < p.degree(); ++i) m = std::max(m, abs(p[static_cast<std::size_t>(i)] / p.lc()));
    const Rat bound = m + Rat{1};
    Rat b{1};
    while (b <= bound) b *= Rat{2};
    return b;
}

inline bool narrow_enough(const Rat& lo, const Rat& hi) {
    static const Rat eps = Rat{1} / pow(Rat{2}, 53);
    const Rat mid = (lo + hi) / Rat{2};
    return hi - lo <= eps * std::max(Rat{1}, abs(mid));
}

class Isolator {
public:
    explicit Isolator(const UPoly& squarefree) : p_(squarefree), sturm_(squarefree) {}

    struct Found {
        bool exact;
        Rat lo;
        Rat hi;
    };

    std::vector<Found> run() {
        const Rat b = root_bound(p_);
        split(-b, b, sturm_.variations_at(-b), sturm_.variations_at(b));
        return std::move(found_);
    }

private:
    // a and b are never roots; va, vb their variation counts.
    void split(const Rat& a, const Rat& b, int va, int vb) {
        const int n = va - vb;
        if (n == 0) return;
        if (n == 1) {
            refine(a, b);
            return;
        }
        const Rat m = (a + b) / Rat{2};
        if (head().sign_at(m) != 0) {
            const int vm = sturm_.variations_at(m);
            split(a, m, va, vm);
            split(m, b, vm, vb);
            return;
        }
        found_.push_back({true, m, m});
        Rat delta = (b - a) / Rat{4};
        while (true) {
            const Rat l = m - delta;
            const Rat r = m + delta;
            if (head().sign_at(l) != 0 && head().sign_at(r) != 0) {
                const int vl = sturm_.variations_at(l);
                const int vr = sturm_.variations_at(r);
                if (vl - vr == 1) {
                    split(a, l, va, vl);
                    split(r, b, vr, vb);
                    return;
                }
            }
            delta /= Rat{2};
        }
    }

    // Exactly one root in (a, b), sign change across it.
    void refine(Rat a, Rat b) {
        const int sa = head().sign_at(a);
        while (!narrow_enough(a, b)) {
            const Rat s = simplest_between(a, b);
            if (head().sign_at(s) == 0) {
                found_.push_back({true, s, s});
                return;
            }
            const Rat m = (a + b) / Rat{2};
            const int sm = head().sign_at(m);
            if (sm == 0) {
                found_.push_back({true, m, m});
                return;
            }
            if (sm == sa) a = m;
            else b = m;
        }
        found_.push_back({false, a, b});
    }

    const IntPoly& head() const { return sturm_.head(); }

    UPoly p_;
    SturmSequence sturm_;
    std::vector<Found> found_;
};

/// Rational roots of a factor of degree at most two, by closed form.
inline std::vector<Rat> closed_form_rational_roots(const UPoly& f) {
    if (f.degree() == 1) return {-f[0] / f[1]};
    if (f.degree() != 2) return {};
    const Rat disc = f[1] * f[1] - Rat{4} * f[2] * f[0];
    if (disc.sign() < 0) return {};
    const BigInt num = disc.num();
    const BigInt den = disc.den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return {};
    const Rat root(BigInt(sqrt(num)), BigInt(sqrt(den)));
    const Rat two_a = Rat{2} * f[2];
    std::vector<Rat> out{(-f[1] - root) / two_a, (-f[1] + root) / two_a};
    if (out[0] > out[1]) std::swap(out[0], out[1]);
    if (out[0] == out[1]) out.pop_back();
    return out;
}

}  // namespace detail

/// All real roots of a nonzero polynomial: exact rationals where found,
/// otherwise isolating intervals refined to relative width 2^-53.
inline RootIsolation isolate_real_roots(const UPoly& p) {
    if (p.is_zero()) throw Error("isolate_real_roots: zero polynomial");
    RootIsolation out;
    if (p.degree() == 0) return out;

    const auto factors = squarefree_decomposition(p);
    UPoly core{{Rat{1}}};
    for (const auto& f : factors) core = core * f;
    std::vector<IntPoly> factor_signs;
    factor_signs.reserve(factors.size());
    for (const auto& f : factors) factor_signs.emplace_back(f);

    std::vector<Rat> closed;
    for (const auto& f : factors)
        for (auto& r : detail::closed_form_rational_roots(f)) closed.push_back(std::move(r));

    auto multiplicity_exact = [&](const Rat& x) {
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factor_signs[i].sign_at(x) == 0) return static_cast<int>(i + 1);
        throw Error("isolate_real_roots: root not attributed to any squarefree factor");
    };
    auto multiplicity_interval = [&](const Rat& lo, const Rat& hi) {
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factor_signs[i].sign_at(lo) != factor_signs[i].sign_at(hi)) return static_cast<int>(i + 1);
        throw Error("isolate_real_roots: interval not attributed to any squarefree factor");
    };

    long real_with_mult = 0;
    for (const auto& f : detail::Isolator(core).run()) {
        IsolatedRoot r;
        if (f.exact) {
            r = IsolatedRoot::exact(f.lo, multiplicity_exact(f.lo));
        } else {
            auto hit = std::find_if(closed.begin(), closed.end(),
                                    [&](const Rat& c) { return f.lo < c && c < f.hi; });
            if (hit != closed.end()) r = IsolatedRoot::exact(*hit, multiplicity_exact(*hit));
            else r = IsolatedRoot::interval(f.lo, f.hi, multiplicity_interval(f.lo, f.hi));
        }
        real_with_mult += r.multiplicity;
        out.roots.push_back(std::move(r));
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.value < b.value; });
    out.nonreal_count = p.degree() - real_with_mult;
    return out;
}

}  // namespace mdisc
