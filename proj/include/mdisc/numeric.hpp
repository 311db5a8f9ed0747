#pragma once

// Floating-point verification layer. Exact values are converted to floats on
// demand here and never flow back into the exact modules.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mdisc/critical_values.hpp"
#include "mdisc/isolate.hpp"
#include "mdisc/poly.hpp"

namespace mdisc {

using Complex = std::complex<double>;

namespace detail {

inline long double horner(const std::vector<long double>& c, long double x) {
    long double acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

inline std::complex<long double> horner(const std::vector<long double>& c, std::complex<long double> z) {
    std::complex<long double> acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

}  // namespace detail

/// All complex roots of sum c[i] x^i (c.back() != 0): companion-matrix
/// eigenvalues polished by a few Newton steps in extended precision.
inline std::vector<Complex> numeric_roots(const std::vector<long double>& c) {
    if (c.size() < 2 || c.back() == 0) throw Error("numeric_roots: polynomial must have degree >= 1");
    const auto n = static_cast<Eigen::Index>(c.size() - 1);
    if (n == 1) return {Complex(static_cast<double>(-c[0] / c[1]), 0.0)};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        companion(i, n - 1) = static_cast<double>(-c[static_cast<std::size_t>(i)] / c.back());
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw Error("numeric_roots: eigenvalue iteration failed");

    std::vector<long double> dc;
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<long double>(i));

    std::vector<Complex> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::complex<long double> z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
        long double best = std::abs(detail::horner(c, z));
        for (int it = 0; it < 8 && best > 0; ++it) {
            const auto d = detail::horner(dc, z);
            if (std::abs(d) == 0) break;
            const auto cand = z - detail::horner(c, z) / d;
            const long double r = std::abs(detail::horner(c, cand));
            if (!(r < best)) break;
            z = cand;
            best = r;
        }
        roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

/// Roots of a polynomial in a single variable with rational coefficients.
inline std::vector<Complex> numeric_roots(const MultiPoly& p) {
    const auto used = p.variables_used();
    if (used.size() != 1) throw Error("numeric_roots: polynomial must be univariate of degree >= 1");
    std::vector<long double> c;
    for (const auto& r : univariate_coefficients(p, used[0])) c.push_back(r.to_long_double());
    return numeric_roots(c);
}

/// prod_{i<j} (x_i - x_j)^2 over the numeric roots of a monic p.
inline double numeric_discriminant_via_roots(const MultiPoly& p) {
    const auto used = p.variables_used();
    if (used.size() != 1) throw Error("numeric_discriminant_via_roots: polynomial must be univariate");
    const auto coeffs = univariate_coefficients(p, used[0]);
    if (coeffs.size() < 3) throw Error("numeric_discriminant_via_roots: degree must be at least 2");
    if (!coeffs.back().is_one()) throw Error("numeric_discriminant_via_roots: polynomial must be monic");
    const auto roots = numeric_roots(p);
    std::complex<long double> acc = 1;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const std::complex<long double> d(roots[i].real() - roots[j].real(), roots[i].imag() - roots[j].imag());
            acc *= d * d;
        }
    return static_cast<double>(acc.real());
}

/// A polynomial with double coefficients for fast repeated evaluation.
class NumericPoly {
public:
    NumericPoly() = default;
    explicit NumericPoly(const MultiPoly& p) {
        for (const auto& [m, c] : p.terms()) terms_.push_back({m.exponents(), c.to_long_double()});
    }

    long double operator()(std::span<const double> x) const {
        long double acc = 0;
        for (const auto& t : terms_) {
            long double v = t.coeff;
            for (std::size_t i = 0; i < t.exps.size(); ++i)
                for (std::uint32_t k = 0; k < t.exps[i]; ++k) v *= x[i];
            acc += v;
        }
        return acc;
    }

private:
    struct Term {
        std::vector<std::uint32_t> exps;
        long double coeff;
    };
    std::vector<Term> terms_;
};

struct NumericCriticalPoint {
    std::vector<double> coordinates;
    double value = 0;
    double residual = 0;  // max |df/dx_i|
};

struct OracleConfig {
    double box_radius = 8.0;
    int grid_per_axis = 0;  // 0: 7 for n <= 2, 5 for n = 3, 4 for n = 4
    double newton_tol = 1e-10;
    int max_steps = 60;
    double dedup_distance = 1e-8;
    double match_tol = 1e-6;  // absolute floor and relative factor

    int grid_for(std::size_t n) const {
        if (grid_per_axis > 0) return grid_per_axis;
        return n <= 2 ? 7 : n == 3 ? 5 : 4;
    }
};

struct CriticalPointSearch {
    std::vector<NumericCriticalPoint> points;  // sorted by coordinates
    std::size_t starts = 0;
    std::size_t diverged = 0;  // starts that did not reach newton_tol
};

/// Multistart damped Newton on grad f = 0 from a uniform grid over
/// [-box_radius, box_radius]^n.
inline CriticalPointSearch find_critical_points_numeric(const MultiPoly& f, const OracleConfig& cfg = {}) {
    const std::size_t n = f.nvars();
    if (n == 0 || f.is_constant()) throw Error("find_critical_points_numeric: f must be nonconstant");
    if (n > 4) throw Error("find_critical_points_numeric: at most 4 variables supported");

    const NumericPoly value(f);
    std::vector<NumericPoly> grad;
    std::vector<std::vector<NumericPoly>> hess(n);
    for (std::size_t i = 0; i < n; ++i) {
        const MultiPoly gi = partial_derivative(f, i);
        grad.emplace_back(gi);
        for (std::size_t j = 0; j < n; ++j) hess[i].emplace_back(partial_derivative(gi, j));
    }
    const auto in = static_cast<Eigen::Index>(n);
    auto gradient = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd g(in);
        for (std::size_t i = 0; i < n; ++i)
            g(static_cast<Eigen::Index>(i)) = static_cast<double>(grad[i]({x.data(), n}));
        return g;
    };
    auto hessian = [&](const Eigen::VectorXd& x) {
        Eigen::MatrixXd h(in, in);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    static_cast<double>(hess[i][j]({x.data(), n}));
        return h;
    };

    const int g = cfg.grid_for(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(g);

    CriticalPointSearch out;
    std::vector<NumericCriticalPoint> raw;
    for (std::size_t s = 0; s < total; ++s) {
        Eigen::VectorXd x(in);
        std::size_t rest = s;
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<double>(rest % static_cast<std::size_t>(g));
            rest /= static_cast<std::size_t>(g);
            x(static_cast<Eigen::Index>(i)) =
                g == 1 ? 0.0 : -cfg.box_radius + 2.0 * cfg.box_radius * k / (g - 1);
        }
        ++out.starts;
        Eigen::VectorXd gr = gradient(x);
        for (int step = 0; step < cfg.max_steps; ++step) {
            const double r = gr.cwiseAbs().maxCoeff();
            if (r <= cfg.newton_tol * 1e-3 || !std::isfinite(r)) break;
            const Eigen::VectorXd dx = hessian(x).completeOrthogonalDecomposition().solve(-gr);
            if (!dx.allFinite()) break;
            // Backtracking on the gradient norm.
            double t = 1.0;
            Eigen::VectorXd cand = x + dx;
            Eigen::VectorXd cg = gradient(cand);
            while (t > 1.0 / 64 && !(cg.norm() < gr.norm())) {
                t /= 2;
                cand = x + t * dx;
                cg = gradient(cand);
            }
            x = cand;
            gr = cg;
            if (x.cwiseAbs().maxCoeff() > 1e8) break;
        }
        const double residual = gr.cwiseAbs().maxCoeff();
        if (!(residual <= cfg.newton_tol)) {
            ++out.diverged;
            continue;
        }
        // Round to a 2^-40 grid so nearby converged starts merge identically;
        // keep the rounded point only if it still meets the tolerance.
        Eigen::VectorXd xr = x;
        for (Eigen::Index i = 0; i < in; ++i) xr(i) = std::ldexp(std::round(std::ldexp(x(i), 40)), -40);
        const double rounded = gradient(xr).cwiseAbs().maxCoeff();
        if (rounded <= cfg.newton_tol) x = xr;
        NumericCriticalPoint pt;
        pt.coordinates.assign(x.data(), x.data() + n);
        pt.value = static_cast<double>(value(pt.coordinates));
        pt.residual = rounded <= cfg.newton_tol ? rounded : residual;
        raw.push_back(std::move(pt));
    }

    // Deterministic merge: sort by coordinates, then drop near-duplicates.
    std::sort(raw.begin(), raw.end(), [](const NumericCriticalPoint& a, const NumericCriticalPoint& b) {
        return a.coordinates < b.coordinates;
    });
    for (auto& pt : raw) {
        const bool dup = std::any_of(out.points.begin(), out.points.end(), [&](const NumericCriticalPoint& q) {
            double d2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = pt.coordinates[i] - q.coordinates[i];
                d2 += d * d;
            }
            return std::sqrt(d2) <= cfg.dedup_distance;
        });
        if (!dup) out.points.push_back(std::move(pt));
    }
    return out;
}

struct ContainmentReport {
    std::vector<std::pair<NumericCriticalPoint, IsolatedRoot>> matched;
    std::vector<NumericCriticalPoint> unmatched_points;  // violations
    std::vector<IsolatedRoot> spurious_roots;           // no numeric witness; allowed
    std::size_t starts = 0;
    std::size_t diverged = 0;
    std::string caveat;

    bool ok() const noexcept { return unmatched_points.empty(); }
};

/// True when the numeric value is within tolerance of the root (or of its
/// isolating interval).
inline bool value_matches_root(double value, const IsolatedRoot& root, double tol) {
    const double t = std::max(tol, tol * std::abs(value));
    if (root.is_exact()) return std::abs(value - root.approx()) <= t;
    return root.lower.to_double() - t <= value && value <= root.upper.to_double() + t;
}

inline ContainmentReport verify_containment(const CriticalValueProblem& prob, const CriticalValuePolynomial& F,
                                            const std::vector<IsolatedRoot>& roots, const OracleConfig& cfg = {}) {
    (void)F;
    const auto search = find_critical_points_numeric(prob.f, cfg);
    ContainmentReport rep;
    rep.starts = search.starts;
    rep.diverged = search.diverged;
    std::ostringstream box;
    box << cfg.box_radius;
    rep.caveat = "critical points were searched by multistart Newton in [-" + box.str() + ", " + box.str() + "]^" +
                 std::to_string(prob.f.nvars()) + "; points outside the box or missed by every start are not checked";
    std::vector<bool> used(roots.size(), false);
    for (const auto& pt : search.points) {
        std::size_t best = roots.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (!value_matches_root(pt.value, roots[i], cfg.match_tol)) continue;
            const double d = std::abs(pt.value - roots[i].approx());
            if (d < best_dist) {
                best = i;
                best_dist = d;
            }
        }
        if (best == roots.size()) {
            rep.unmatched_points.push_back(pt);
        } else {
            used[best] = true;
            rep.matched.emplace_back(pt, roots[best]);
        }
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (!used[i]) rep.spurious_roots.push_back(roots[i]);
    return rep;
}

}  // namespace mdisc
