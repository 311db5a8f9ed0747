#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mdisc/poly.hpp"

namespace mdisc {

/// A polynomial organised as univariate in one distinguished variable, with
/// coefficients that do not involve that variable.
class UniView {
public:
    /// Throws for the zero polynomial (a view needs a nonzero leading coefficient).
    UniView(const MultiPoly& p, std::size_t var) : ring_(p.ring()), var_(var) {
        if (var >= p.nvars()) throw VariableAbsent("variable index out of range");
        if (p.is_zero()) throw Error("cannot view the zero polynomial as univariate");
        coeffs_ = coefficients_in(p, var);
    }

    std::size_t variable() const noexcept { return var_; }
    const RingPtr& ring() const noexcept { return ring_; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<MultiPoly>& coeffs() const noexcept { return coeffs_; }
    const MultiPoly& coeff(std::size_t k) const { return coeffs_.at(k); }
    const MultiPoly& leading() const { return coeffs_.back(); }

    MultiPoly reassemble() const {
        MultiPoly x = MultiPoly::variable(ring_, var_);
        MultiPoly acc(ring_);
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

private:
    RingPtr ring_;
    std::size_t var_;
    std::vector<MultiPoly> coeffs_;
};

namespace detail {

/// Integer-content-free with a positive leading coefficient.
inline MultiPoly normalize_unit(const MultiPoly& p) {
    if (p.is_zero()) return p;
    MultiPoly r = strip_integer_content(p);
    if (r.leading_term().second.sign() < 0) r = -r;
    return r;
}

inline long highest_variable(const MultiPoly& p) {
    for (std::size_t i = p.nvars(); i-- > 0;)
        if (p.uses_variable(i)) return static_cast<long>(i);
    return -1;
}

/// Sparse pseudo-remainder of a by b in `var` (deg b >= 1).
inline MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::size_t var) {
    const long db = degree_in(b, var);
    const auto bc = coefficients_in(b, var);
    const MultiPoly& lb = bc.back();
    MultiPoly x = MultiPoly::variable(b.ring(), var);
    MultiPoly tail = b - lb * pow(x, static_cast<unsigned>(db));
    while (!a.is_zero() && degree_in(a, var) >= db) {
        const long da = degree_in(a, var);
        const auto ac = coefficients_in(a, var);
        MultiPoly shift = pow(x, static_cast<unsigned>(da - db));
        MultiPoly a_tail = a - ac.back() * pow(x, static_cast<unsigned>(da));
        a = lb * a_tail - ac.back() * shift * tail;
    }
    return a;
}

inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

/// gcd of the coefficients of p with respect to var.
inline MultiPoly content_in(const MultiPoly& p, std::size_t var) {
    MultiPoly g(p.ring());
    for (const auto& c : coefficients_in(p, var)) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

inline MultiPoly primitive_part_in(const MultiPoly& p, std::size_t var) {
    if (p.is_zero()) return p;
    return normalize_unit(exact_divide(p, content_in(p, var)));
}

/// Multivariate gcd by recursive primitive remainder sequences, normalised to
/// be integer-content-free with positive leading coefficient. Only used for
/// content removal in squarefree_part; inputs are desk-scale.
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.ring(), Rat{1});
    const long va = highest_variable(a);
    const long vb = highest_variable(b);
    const auto var = static_cast<std::size_t>(std::max(va, vb));
    if (va != vb) {
        // Only one of them involves var: the gcd divides that one's content.
        return va > vb ? poly_gcd(content_in(a, var), b) : poly_gcd(a, content_in(b, var));
    }
    const MultiPoly ca = content_in(a, var);
    const MultiPoly cb = content_in(b, var);
    MultiPoly pa = exact_divide(a, ca);
    MultiPoly pb = exact_divide(b, cb);
    if (degree_in(pa, var) < degree_in(pb, var)) std::swap(pa, pb);
    while (true) {
        MultiPoly r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) break;
        if (degree_in(r, var) == 0) {
            pb = MultiPoly::constant(a.ring(), Rat{1});
            break;
        }
        pa = std::move(pb);
        pb = primitive_part_in(r, var);
    }
    return normalize_unit(poly_gcd(ca, cb) * primitive_part_in(pb, var));
}

}  // namespace detail

/// Squarefree part over the fraction field of the remaining variables: p
/// divided by the primitive gcd of p and dp/dx, integer-content-free with a
/// positive leading coefficient. Content in the remaining variables is kept.
inline UniView squarefree_part(const UniView& view) {
    if (view.degree() < 1) throw Error("squarefree_part needs degree >= 1 in the distinguished variable");
    const std::size_t x = view.variable();
    const MultiPoly p = view.reassemble();
    const MultiPoly dp = partial_derivative(p, x);
    MultiPoly g = detail::poly_gcd(p, dp);
    g = detail::primitive_part_in(g, x);
    MultiPoly h = exact_divide(p, g);
    return UniView(detail::normalize_unit(h), x);
}

}  // namespace mdisc
