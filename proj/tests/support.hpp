#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mdisc/parser.hpp"
#include "mdisc/poly.hpp"

namespace testing_support {

using namespace mdisc;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rat rand_rat(long num_range = 9, long den_max = 5) {
    return Rat(rand_int(-num_range, num_range), rand_int(1, den_max));
}

inline Rat rand_nonzero_rat(long num_range = 9, long den_max = 5) {
    Rat r;
    while (r.is_zero()) r = rand_rat(num_range, den_max);
    return r;
}

/// Random polynomial with per-variable degree caps and a total-degree cap.
inline MultiPoly rand_poly(const RingPtr& ring, const std::vector<unsigned>& max_deg, unsigned total, int terms,
                           long coeff_range = 5, bool rational = false) {
    std::vector<MultiPoly::Term> ts;
    for (int k = 0; k < terms; ++k) {
        std::vector<std::uint32_t> e(ring->size());
        unsigned sum = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const unsigned cap = std::min<unsigned>(max_deg[i], total - sum);
            e[i] = static_cast<std::uint32_t>(rand_int(0, cap));
            sum += e[i];
        }
        const Rat c = rational ? rand_rat(coeff_range, 4) : Rat(rand_int(-coeff_range, coeff_range));
        ts.emplace_back(Monomial(e), c);
    }
    return MultiPoly::from_terms(ring, std::move(ts));
}

inline std::vector<Rat> rand_point(std::size_t n) {
    std::vector<Rat> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rand_rat(7, 6));
    return x;
}

inline RingPtr ring_of(std::initializer_list<const char*> names) {
    std::vector<std::string> v(names.begin(), names.end());
    return make_ring(v);
}

}  // namespace testing_support
