#pragma once

// The critical-value equation DD_p(v) = 0 for p = f - v.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "mdisc/elimination.hpp"
#include "mdisc/isolate.hpp"
#include "mdisc/poly.hpp"

namespace mdisc {

struct CriticalValueProblem {
    MultiPoly f;
    std::string v_name = "v";
    /// Variables of f, outermost first: {x1, ..., xn} eliminates xn first.
    /// Defaults to f's ring order.
    std::optional<std::vector<std::string>> order;
    bool squarefree = false;
};

struct CriticalValuePolynomial {
    MultiPoly F;  // univariate in v_name over the shifted ring
    std::size_t v_index = 0;
    std::vector<std::string> order;
    std::vector<std::string> warnings;
};

inline void validate(const CriticalValueProblem& prob) {
    if (!prob.f.ring()) throw Error("critical-value problem has no polynomial");
    if (prob.f.is_constant()) throw Error("f must be nonconstant");
    if (prob.f.ring()->index_of(prob.v_name))
        throw Error("value variable '" + prob.v_name + "' collides with a variable of f; choose another name");
}

/// f - v over f's ring extended by the value variable (appended last).
inline MultiPoly build_shifted_polynomial(const CriticalValueProblem& prob) {
    validate(prob);
    std::vector<std::string> names = prob.f.ring()->names();
    names.push_back(prob.v_name);
    const RingPtr ring = make_ring(std::move(names));
    return change_ring(prob.f, ring) - MultiPoly::variable(ring, ring->size() - 1);
}

inline std::vector<std::string> resolved_order(const CriticalValueProblem& prob) {
    std::vector<std::string> order = prob.order.value_or(prob.f.ring()->names());
    for (const auto& name : order) {
        if (!prob.f.ring()->index_of(name)) throw VariableAbsent("order names unknown variable '" + name + "'");
    }
    for (std::size_t i = 0; i < prob.f.nvars(); ++i) {
        if (!prob.f.uses_variable(i)) continue;
        const auto& name = prob.f.ring()->name(i);
        if (std::find(order.begin(), order.end(), name) == order.end())
            throw Error("elimination order omits variable '" + name + "'");
    }
    return order;
}

/// Iterated discriminant of f - v over the problem's order. Intermediate
/// stages are divided by their integer content; the final F is not.
inline CriticalValuePolynomial critical_value_polynomial(const CriticalValueProblem& prob,
                                                         std::stop_token stop = {}) {
    const MultiPoly p = build_shifted_polynomial(prob);
    CriticalValuePolynomial out;
    out.order = resolved_order(prob);
    out.v_index = p.nvars() - 1;
    std::vector<std::size_t> idx;
    for (const auto& name : out.order) idx.push_back(*p.ring()->index_of(name));
    MultiDiscOptions opts;
    opts.squarefree_each_stage = prob.squarefree;
    opts.strip_content = true;
    auto res = multiple_discriminant(p, idx, opts, std::move(stop));
    out.F = std::move(res.value);
    out.warnings = std::move(res.warnings);
    return out;
}

inline UPoly as_univariate(const CriticalValuePolynomial& F) {
    return UPoly(univariate_coefficients(F.F, F.v_index));
}

inline RootIsolation isolate_real_roots(const CriticalValuePolynomial& F) {
    if (F.F.is_zero()) throw Error("isolate_real_roots: zero critical-value polynomial");
    return isolate_real_roots(as_univariate(F));
}

}  // namespace mdisc
