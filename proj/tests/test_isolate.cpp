#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "mdisc/isolate.hpp"
#include "support.hpp"

using namespace mdisc;
using namespace testing_support;

namespace {

UPoly U(std::initializer_list<long> lowest_first) {
    std::vector<Rat> c;
    for (long x : lowest_first) c.emplace_back(x);
    return UPoly(std::move(c));
}

UPoly linear(const Rat& root) { return UPoly({-root, Rat{1}}); }

}  // namespace

TEST(UPoly, DivmodAndGcd) {
    const UPoly a = U({-1, 0, 1});
    const UPoly b = U({-1, 1});
    const auto [q, r] = divmod(a, b);
    EXPECT_EQ(q, U({1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(gcd(U({1, 2, 1}), U({-1, 0, 1})), U({1, 1}));
    EXPECT_THROW(divmod(a, UPoly{}), Error);
}

TEST(UPoly, YunDecomposition) {
    // (x - 1)^2 (x + 2)
    const auto f = squarefree_decomposition(U({2, -3, 0, 1}));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], U({2, 1}));
    EXPECT_EQ(f[1], U({-1, 1}));
    // 3 (x^2 + 1)^3 x
    const UPoly p = UPoly({Rat{3}}) * U({1, 0, 1}) * U({1, 0, 1}) * U({1, 0, 1}) * U({0, 1});
    const auto g = squarefree_decomposition(p);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g[0], U({0, 1}));
    EXPECT_EQ(g[1], U({1}));
    EXPECT_EQ(g[2], U({1, 0, 1}));
}

TEST(IntPoly, ExactSigns) {
    const IntPoly p(UPoly({Rat(-1, 4), Rat{0}, Rat{1}}));
    EXPECT_EQ(p.sign_at(Rat(1, 2)), 0);
    EXPECT_EQ(p.sign_at(Rat(1, 3)), -1);
    EXPECT_EQ(p.sign_at(Rat(-2, 3)), 1);
    EXPECT_EQ(p.sign_at_infinity(false), 1);
}

TEST(SimplestBetween, SmallestDenominator) {
    EXPECT_EQ(detail::simplest_between(Rat(-1, 2), Rat(3)), Rat(0));
    EXPECT_EQ(detail::simplest_between(Rat(1, 3), Rat(2, 3)), Rat(1, 2));
    EXPECT_EQ(detail::simplest_between(Rat(3, 10), Rat(4, 10)), Rat(1, 3));
    EXPECT_EQ(detail::simplest_between(Rat(-4, 10), Rat(-3, 10)), Rat(-1, 3));
    EXPECT_EQ(detail::simplest_between(Rat(2), Rat(7, 2)), Rat(3));
}

TEST(Isolate, WorkedValues) {
    auto a = isolate_real_roots(U({108, 0, -27}));
    ASSERT_EQ(a.roots.size(), 2u);
    EXPECT_TRUE(a.roots[0].is_exact());
    EXPECT_EQ(a.roots[0].value, Rat(-2));
    EXPECT_EQ(a.roots[1].value, Rat(2));
    EXPECT_EQ(a.roots[0].multiplicity, 1);

    auto b = isolate_real_roots(U({0, 64}));
    ASSERT_EQ(b.roots.size(), 1u);
    EXPECT_EQ(b.roots[0].value, Rat(0));

    auto c = isolate_real_roots(U({1, -2, 1}));
    ASSERT_EQ(c.roots.size(), 1u);
    EXPECT_EQ(c.roots[0].value, Rat(1));
    EXPECT_EQ(c.roots[0].multiplicity, 2);
}

TEST(Isolate, IrrationalAndComplex) {
    auto r = isolate_real_roots(U({-2, 0, 1}) * U({1, 0, 1}));
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_EQ(r.nonreal_count, 2);
    for (const auto& root : r.roots) {
        EXPECT_FALSE(root.is_exact());
        EXPECT_LT(root.lower, root.upper);
        EXPECT_NEAR(std::abs(root.approx()), std::sqrt(2.0), 1e-15);
        EXPECT_TRUE(detail::narrow_enough(root.lower, root.upper));
    }
    EXPECT_TRUE(isolate_real_roots(U({5})).roots.empty());
    EXPECT_THROW(isolate_real_roots(UPoly{}), Error);
}

TEST(Isolate, ClosedFormQuadraticRationalRoots) {
    // 9x^2 - 1 has roots +-1/3, which bisection from a power-of-two box never hits.
    auto r = isolate_real_roots(U({-1, 0, 9}));
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_TRUE(r.roots[0].is_exact());
    EXPECT_EQ(r.roots[0].value, Rat(-1, 3));
    EXPECT_EQ(r.roots[1].value, Rat(1, 3));
}

// Roots planted with multiplicities come back exactly.
TEST(IsolateProperty, PlantedRationalRoots) {
    for (int k = 0; k < 80; ++k) {
        std::map<Rat, int> planted;
        UPoly p({Rat(rand_int(1, 5))});
        const int nroots = static_cast<int>(rand_int(1, 4));
        for (int i = 0; i < nroots; ++i) {
            const Rat root = rand_rat(12, 7);
            const int m = static_cast<int>(rand_int(1, 3));
            planted[root] += m;
            for (int j = 0; j < m; ++j) p = p * linear(root);
        }
        if (rand_int(0, 1) == 1) p = p * U({1, 0, 1});
        const auto iso = isolate_real_roots(p);
        ASSERT_EQ(iso.roots.size(), planted.size());
        auto it = planted.begin();
        for (const auto& root : iso.roots) {
            ASSERT_TRUE(root.is_exact());
            EXPECT_EQ(root.value, it->first);
            EXPECT_EQ(root.multiplicity, it->second);
            ++it;
        }
        long real_mult = 0;
        for (const auto& [r, m] : planted) real_mult += m;
        EXPECT_EQ(iso.nonreal_count, p.degree() - real_mult);
    }
}

// Root count equals the Sturm count and every interval brackets a sign change.
TEST(IsolateProperty, SturmCountsAndSignChanges) {
    for (int k = 0; k < 80; ++k) {
        std::vector<Rat> c;
        const int deg = static_cast<int>(rand_int(1, 7));
        for (int i = 0; i <= deg; ++i) c.emplace_back(rand_int(-9, 9));
        if (c.back().is_zero()) c.back() = Rat{1};
        const UPoly p(c);
        const auto iso = isolate_real_roots(p);
        UPoly core({Rat{1}});
        for (const auto& f : squarefree_decomposition(p)) core = core * f;
        const SturmSequence sturm(core);
        EXPECT_EQ(static_cast<int>(iso.roots.size()), sturm.total_real_roots());
        const IntPoly head(core);
        for (std::size_t i = 0; i < iso.roots.size(); ++i) {
            const auto& r = iso.roots[i];
            if (r.is_exact()) {
                EXPECT_TRUE(p.eval(r.value).is_zero());
            } else {
                EXPECT_EQ(head.sign_at(r.lower) * head.sign_at(r.upper), -1);
                EXPECT_EQ(sturm.roots_between(r.lower, r.upper), 1);
            }
            if (i > 0) {
                EXPECT_LT(iso.roots[i - 1].upper, r.lower);
            }
        }
    }
}
