#pragma once

// Resultants, discriminants and the iterated ("multiple") discriminant.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "mdisc/poly.hpp"
#include "mdisc/uniview.hpp"

namespace mdisc {

/// Square matrix of polynomials over one ring, stored row-major.
class PolyMatrix {
public:
    PolyMatrix(RingPtr ring, std::size_t n)
        : ring_(std::move(ring)), n_(n), entries_(n * n, MultiPoly(ring_)) {}

    /// Rows of equal length, all entries over the same ring.
    static PolyMatrix from_rows(const std::vector<std::vector<MultiPoly>>& rows) {
        if (rows.empty()) throw Error("matrix needs at least one row");
        const std::size_t n = rows.size();
        PolyMatrix m(rows[0].at(0).ring(), n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw Error("matrix is not square");
            for (std::size_t j = 0; j < n; ++j) {
                MultiPoly::check_ring(rows[i][j], m.entries_[0]);
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    const RingPtr& ring() const noexcept { return ring_; }
    MultiPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    RingPtr ring_;
    std::size_t n_;
    std::vector<MultiPoly> entries_;
};

/// Sylvester matrix of p (degree m) and q (degree k): k shifted rows of p's
/// coefficients followed by m shifted rows of q's, leading coefficients first.
inline PolyMatrix sylvester_matrix(const UniView& p, const UniView& q) {
    if (p.variable() != q.variable()) throw Error("sylvester_matrix: views use different variables");
    if (!same_ring(p.ring(), q.ring())) throw RingMismatch(p.ring()->to_string(), q.ring()->to_string());
    const auto m = static_cast<std::size_t>(p.degree());
    const auto k = static_cast<std::size_t>(q.degree());
    if (m == 0 && k == 0) throw Error("sylvester_matrix: both polynomials are constant");
    PolyMatrix s(p.ring(), m + k);
    for (std::size_t row = 0; row < k; ++row)
        for (std::size_t d = 0; d <= m; ++d) s(row, row + d) = p.coeff(m - d);
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t d = 0; d <= k; ++d) s(k + row, row + d) = q.coeff(k - d);
    return s;
}

/// Laplace expansion along the first row. Exponential; meant for tiny matrices.
inline MultiPoly determinant_by_minors(const PolyMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(m.ring(), Rat{1});
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    MultiPoly acc(m.ring());
    PolyMatrix minor(m.ring(), n - 1);
    for (std::size_t col = 0; col < n; ++col) {
        if (m(0, col).is_zero()) continue;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, mj = 0; j < n; ++j)
                if (j != col) minor(i - 1, mj++) = m(i, j);
        MultiPoly t = m(0, col) * determinant_by_minors(minor);
        acc = (col % 2 == 0) ? acc + t : acc - t;
    }
    return acc;
}

/// Fraction-free Gaussian elimination (Bareiss). Every division is exact in
/// the polynomial ring; a failing division means a bug and surfaces as
/// NotDivisible.
inline MultiPoly determinant_bareiss(PolyMatrix m, std::stop_token stop = {}) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::constant(m.ring(), Rat{1});
    bool negate = false;
    MultiPoly prev = MultiPoly::constant(m.ring(), Rat{1});
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (stop.stop_requested()) throw Cancelled();
        // Pivot: the nonzero entry with the fewest terms.
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            if (piv == n || m(i, k).num_terms() < m(piv, k).num_terms()) piv = i;
        }
        if (piv == n) return MultiPoly(m.ring());
        if (piv != k) {
            m.swap_rows(piv, k);
            negate = !negate;
        }
        const MultiPoly& pk = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const MultiPoly lead = m(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = pk * m(i, j);
                if (!lead.is_zero() && !m(k, j).is_zero()) num -= lead * m(k, j);
                m(i, j) = exact_divide(num, prev);
            }
            m(i, k) = MultiPoly(m.ring());
        }
        prev = m(k, k);
    }
    MultiPoly det = m(n - 1, n - 1);
    return negate ? -det : det;
}

inline MultiPoly determinant(const PolyMatrix& m, std::stop_token stop = {}) {
    if (m.size() <= 4) return determinant_by_minors(m);
    return determinant_bareiss(m, std::move(stop));
}

inline MultiPoly resultant(const UniView& p, const UniView& q, std::stop_token stop = {}) {
    return determinant(sylvester_matrix(p, q), std::move(stop));
}

/// Discriminant of p with respect to var, normalised as
/// (-1)^(n(n-1)/2) * Res(p, dp/dvar) / lc(p); equals 1 for linear p.
inline MultiPoly discriminant_wrt(const MultiPoly& p, std::size_t var, std::stop_token stop = {}) {
    if (var >= p.nvars()) throw VariableAbsent("variable index out of range");
    if (p.is_zero()) throw Error("discriminant of the zero polynomial");
    const long n = degree_in(p, var);
    if (n == 0) throw VariableAbsent("variable absent: '" + p.ring()->name(var) + "' does not occur");
    if (n == 1) return MultiPoly::constant(p.ring(), Rat{1});
    const UniView view(p, var);
    const UniView deriv(partial_derivative(p, var), var);
    MultiPoly res = exact_divide(resultant(view, deriv, std::move(stop)), view.leading());
    return ((n * (n - 1) / 2) % 2 == 0) ? res : -res;
}

/// The multiple discriminant collapsed to zero at some stage.
class DegenerateDiscriminant : public Error {
public:
    DegenerateDiscriminant(std::size_t stage, std::string variable, MultiPoly intermediate)
        : Error("discriminant with respect to '" + variable + "' vanished identically at elimination stage " +
                std::to_string(stage + 1)),
          stage_(stage),
          variable_(std::move(variable)),
          intermediate_(std::move(intermediate)) {}

    /// Zero-based position in execution order (the last variable of the order runs first).
    std::size_t stage() const noexcept { return stage_; }
    const std::string& variable() const noexcept { return variable_; }
    /// The polynomial whose discriminant vanished.
    const MultiPoly& intermediate() const noexcept { return intermediate_; }

private:
    std::size_t stage_;
    std::string variable_;
    MultiPoly intermediate_;
};

struct MultiDiscOptions {
    /// Replace each stage input by its squarefree part and keep the leading
    /// coefficient factor, so a stage yields (-1)^(n(n-1)/2) Res(q, q') = lc(q) D(q).
    bool squarefree_each_stage = false;
    /// Divide every stage result except the last by its positive integer content.
    bool strip_content = false;
};

struct StageRecord {
    std::size_t variable;
    long degree;  // degree of the stage input in `variable`
    bool skipped;
    std::size_t result_terms;
};

struct MultiDiscResult {
    MultiPoly value;
    std::vector<StageRecord> stages;  // execution order
    std::vector<std::string> warnings;
};

/// Folds discriminant_wrt over `order` from its last entry to its first, so
/// order (x1, ..., xn) computes D(x1, D(x2, ..., D(xn, p)...)).
inline MultiDiscResult multiple_discriminant(const MultiPoly& p, const std::vector<std::size_t>& order,
                                             const MultiDiscOptions& opts = {}, std::stop_token stop = {}) {
    if (order.empty()) throw Error("multiple_discriminant: empty elimination order");
    if (p.is_zero()) throw Error("multiple_discriminant of the zero polynomial");
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= p.nvars()) throw VariableAbsent("elimination order names a variable outside the ring");
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] == order[j]) throw Error("elimination order repeats '" + p.ring()->name(order[i]) + "'");
    }

    MultiDiscResult out;
    MultiPoly cur = p;
    const std::size_t nstages = order.size();
    for (std::size_t stage = 0; stage < nstages; ++stage) {
        if (stop.stop_requested()) throw Cancelled();
        const std::size_t var = order[nstages - 1 - stage];
        const std::string& name = p.ring()->name(var);
        const long deg = degree_in(cur, var);
        if (deg <= 0) {
            out.warnings.push_back("stage " + std::to_string(stage + 1) + " (" + name +
                                   "): variable absent, stage skipped");
            out.stages.push_back({var, deg, true, cur.num_terms()});
            continue;
        }
        MultiPoly next(p.ring());
        if (opts.squarefree_each_stage) {
            const UniView reduced = squarefree_part(UniView(cur, var));
            if (reduced.degree() < deg)
                out.warnings.push_back("stage " + std::to_string(stage + 1) + " (" + name +
                                       "): squarefree reduction lowered degree " + std::to_string(deg) + " -> " +
                                       std::to_string(reduced.degree()));
            const long n = reduced.degree();
            if (n == 1) {
                next = reduced.leading();
            } else {
                const UniView deriv(partial_derivative(reduced.reassemble(), var), var);
                next = resultant(reduced, deriv, stop);
                if ((n * (n - 1) / 2) % 2 != 0) next = -next;
            }
        } else {
            next = discriminant_wrt(cur, var, stop);
        }
        if (next.is_zero()) throw DegenerateDiscriminant(stage, name, cur);
        if (opts.strip_content && stage + 1 < nstages) next = strip_integer_content(next);
        out.stages.push_back({var, deg, false, next.num_terms()});
        cur = std::move(next);
    }
    out.value = std::move(cur);
    return out;
}

/// Discriminant of the generic monic x^n + a_{n-1} x^{n-1} + ... + a_0 as a
/// polynomial in the formal coefficients, with all first partials.
struct GenericDiscriminant {
    int degree;
    RingPtr ring;                    // a0, ..., a{n-1}, x
    MultiPoly disc;
    std::vector<MultiPoly> partials;  // slot i: dD/da_i
};

inline GenericDiscriminant compute_generic_discriminant(int n) {
    if (n < 2 || n > 6) throw Error("generic_discriminant supports degrees 2..6");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
    names.emplace_back("x");
    RingPtr ring = make_ring(std::move(names));
    const auto x = static_cast<std::size_t>(n);
    MultiPoly p = pow(MultiPoly::variable(ring, x), static_cast<unsigned>(n));
    for (int i = 0; i < n; ++i)
        p += MultiPoly::variable(ring, static_cast<std::size_t>(i)) *
             pow(MultiPoly::variable(ring, x), static_cast<unsigned>(i));
    GenericDiscriminant g{n, ring, discriminant_wrt(p, x), {}};
    for (int i = 0; i < n; ++i) g.partials.push_back(partial_derivative(g.disc, static_cast<std::size_t>(i)));
    return g;
}

/// Cached; safe to call concurrently.
inline const GenericDiscriminant& generic_discriminant(int n) {
    if (n < 2 || n > 6) throw Error("generic_discriminant supports degrees 2..6");
    static std::mutex mu;
    static std::array<std::unique_ptr<GenericDiscriminant>, 7> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) slot = std::make_unique<GenericDiscriminant>(compute_generic_discriminant(n));
    return *slot;
}

/// A monic univariate p with numeric coefficients and a first variation
/// delta_p of lower degree, both in the same single variable.
class VariationPair {
public:
    VariationPair(const MultiPoly& p, const MultiPoly& delta_p) {
        MultiPoly::check_ring(p, delta_p);
        const auto used = p.variables_used();
        if (used.size() != 1) throw Error("variation pair: p must be univariate of degree >= 1");
        var_ = used[0];
        a_ = univariate_coefficients(p, var_);
        if (!a_.back().is_one()) throw Error("variation pair: p must be monic");
        a_.pop_back();
        b_ = univariate_coefficients(delta_p, var_);
        if (b_.size() > a_.size()) throw Error("variation pair: delta_p must have degree below deg p");
        b_.resize(a_.size());
    }

    int degree() const noexcept { return static_cast<int>(a_.size()); }
    const std::vector<Rat>& a() const noexcept { return a_; }  // a_0 .. a_{n-1}
    const std::vector<Rat>& b() const noexcept { return b_; }  // b_0 .. b_{n-1}

private:
    std::size_t var_ = 0;
    std::vector<Rat> a_;
    std::vector<Rat> b_;
};

/// delta D = sum_i dD/da_i (a) * b_i.
inline Rat delta_discriminant(const VariationPair& pair) {
    const int n = pair.degree();
    if (n < 2 || n > 6) throw Error("delta_discriminant: degree " + std::to_string(n) + " outside the generic table");
    const GenericDiscriminant& g = generic_discriminant(n);
    if (g.degree != n) throw Error("delta_discriminant: degree mismatch with generic table");
    std::vector<Rat> point(pair.a());
    point.emplace_back(0);
    Rat acc;
    for (int i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(i);
        if (pair.b()[si].is_zero()) continue;
        acc += evaluate(g.partials[si], point) * pair.b()[si];
    }
    return acc;
}

/// Checks D_p(y0) == lc(y0)^(2n-2) * D_monic(y0): the left side from the
/// symbolic discriminant, the right side by specialising y first.
inline bool check_leading_coeff_relation(const UniView& p, std::size_t y_var, const Rat& sample) {
    const long n = p.degree();
    if (n < 2) throw Error("leading-coefficient relation needs degree >= 2");
    for (const auto& c : p.coeffs())
        for (std::size_t v : c.variables_used())
            if (v != y_var) throw Error("coefficients must be univariate in '" + p.ring()->name(y_var) + "'");
    const Rat lc = substitute(p.leading(), y_var, sample).constant_term();
    if (lc.is_zero()) throw Error("leading coefficient vanishes at the sample point");

    const MultiPoly whole = p.reassemble();
    const Rat lhs = substitute(discriminant_wrt(whole, p.variable()), y_var, sample).constant_term();
    const MultiPoly monic = substitute(whole, y_var, sample) * (Rat{1} / lc);
    const Rat d_monic = discriminant_wrt(monic, p.variable()).constant_term();
    return lhs == pow(lc, static_cast<unsigned>(2 * n - 2)) * d_monic;
}

}  // namespace mdisc
