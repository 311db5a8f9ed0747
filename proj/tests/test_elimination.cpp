#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <stop_token>

#include "mdisc/elimination.hpp"
#include "support.hpp"

using namespace mdisc;
using namespace testing_support;

namespace {

// Leibniz formula: independent of both Bareiss and Laplace expansion.
MultiPoly leibniz(const PolyMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly acc(m.ring());
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        MultiPoly t = MultiPoly::constant(m.ring(), Rat{1});
        for (std::size_t i = 0; i < n && !t.is_zero(); ++i) t = t * m(i, perm[i]);
        acc = inversions % 2 == 0 ? acc + t : acc - t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

MultiPoly P(const char* s, const RingPtr& r) { return parse_poly(s, r); }

}  // namespace

TEST(Sylvester, WorkedLayouts) {
    auto r = ring_of({"a", "b", "c", "x"});
    EXPECT_EQ(sylvester_matrix(UniView(P("x - a", r), 3), UniView(P("x - b", r), 3)),
              PolyMatrix::from_rows({{P("1", r), P("-a", r)}, {P("1", r), P("-b", r)}}));
    const auto z = MultiPoly(r);
    EXPECT_EQ(sylvester_matrix(UniView(P("x^2 + b*x + c", r), 3), UniView(P("2*x + b", r), 3)),
              PolyMatrix::from_rows({{P("1", r), P("b", r), P("c", r)},
                                     {P("2", r), P("b", r), z},
                                     {z, P("2", r), P("b", r)}}));
    EXPECT_EQ(sylvester_matrix(UniView(P("x^2", r), 3), UniView(P("2*x", r), 3)),
              PolyMatrix::from_rows({{P("1", r), z, z}, {P("2", r), z, z}, {z, P("2", r), z}}));
    EXPECT_THROW(sylvester_matrix(UniView(P("a", r), 3), UniView(P("b", r), 3)), Error);
}

TEST(Determinant, WorkedValues) {
    auto r = ring_of({"a", "b", "c"});
    const auto z = MultiPoly(r);
    const auto one = P("1", r);
    EXPECT_EQ(determinant(PolyMatrix::from_rows({{one, P("-a", r)}, {one, P("-b", r)}})), P("a - b", r));
    EXPECT_EQ(determinant(PolyMatrix::from_rows({{one, z, z}, {z, one, z}, {z, z, one}})), one);
    const auto m = PolyMatrix::from_rows({{one, P("b", r), P("c", r)}, {P("2", r), P("b", r), z}, {z, P("2", r), P("b", r)}});
    EXPECT_EQ(determinant(m), P("-b^2 + 4*c", r));
    EXPECT_EQ(determinant_bareiss(m), P("-b^2 + 4*c", r));
}

TEST(DeterminantProperty, BareissMatchesLeibniz) {
    auto r = ring_of({"x", "y"});
    for (int k = 0; k < 40; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
        PolyMatrix m(r, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rand_int(0, 4) != 0) m(i, j) = rand_poly(r, {2, 2}, 2, 2, 4);
        const MultiPoly oracle = leibniz(m);
        EXPECT_EQ(determinant_bareiss(m), oracle);
        EXPECT_EQ(determinant_by_minors(m), oracle);
    }
}

TEST(Resultant, WorkedValues) {
    auto r = ring_of({"a", "b", "c", "x"});
    EXPECT_EQ(resultant(UniView(P("x - a", r), 3), UniView(P("x - b", r), 3)), P("a - b", r));
    EXPECT_EQ(resultant(UniView(P("x^2 + b*x + c", r), 3), UniView(P("2*x + b", r), 3)), P("-(b^2 - 4*c)", r));
}

TEST(ResultantProperty, MultiplicativityAndSwapParity) {
    auto r = ring_of({"x", "y"});
    for (int k = 0; k < 30; ++k) {
        const MultiPoly p = P("x^2", r) + rand_poly(r, {1, 2}, 2, 3);
        const MultiPoly q1 = rand_poly(r, {2, 1}, 2, 3) + P("x", r);
        const MultiPoly q2 = rand_poly(r, {1, 2}, 2, 3) + P("2*x", r);
        const UniView vp(p, 0);
        const UniView v1(q1, 0);
        const UniView v2(q2, 0);
        EXPECT_EQ(resultant(vp, UniView(q1 * q2, 0)), resultant(vp, v1) * resultant(vp, v2));
        const MultiPoly forward = resultant(vp, v1);
        const MultiPoly back = resultant(v1, vp);
        EXPECT_EQ(forward, (vp.degree() * v1.degree()) % 2 == 0 ? back : -back);
    }
}

TEST(Discriminant, WorkedValues) {
    const MultiPoly quad = parse_poly("x^2 + a1*x + a0");
    EXPECT_EQ(discriminant_wrt(quad, *quad.ring()->index_of("x")), parse_poly("a1^2 - 4*a0", quad.ring()));
    const MultiPoly cubic = parse_poly("x^3 + p*x + q");
    EXPECT_EQ(discriminant_wrt(cubic, *cubic.ring()->index_of("x")), parse_poly("-4*p^3 - 27*q^2", cubic.ring()));
    auto r = ring_of({"v", "x", "y"});
    EXPECT_EQ(discriminant_wrt(P("x^2 + y^2 - v", r), 2), P("-4*x^2 + 4*v", r));
    EXPECT_EQ(discriminant_wrt(P("3*x + y", r), 1), P("1", r));
    EXPECT_THROW(discriminant_wrt(P("y + 1", r), 1), VariableAbsent);
    EXPECT_THROW(discriminant_wrt(MultiPoly(r), 1), Error);
}

TEST(Discriminant, NonMonicQuadraticIsClassical) {
    const MultiPoly p = parse_poly("a*x^2 + b*x + c");
    EXPECT_EQ(discriminant_wrt(p, *p.ring()->index_of("x")), parse_poly("b^2 - 4*a*c", p.ring()));
}

TEST(MultipleDiscriminant, WorkedValues) {
    auto r = ring_of({"x", "y", "v"});
    EXPECT_EQ(multiple_discriminant(P("x^2 + y^2 - v", r), {0, 1}).value, P("64*v", r));
    EXPECT_EQ(multiple_discriminant(P("x^2 - y^2 - v", r), {0, 1}).value, P("64*v", r));
    try {
        multiple_discriminant(P("x^2*y^2 - v", r), {0, 1});
        FAIL();
    } catch (const DegenerateDiscriminant& e) {
        EXPECT_EQ(e.stage(), 1u);
        EXPECT_EQ(e.variable(), "x");
        EXPECT_EQ(e.intermediate(), P("4*v*x^2", r));
        EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
    }
}

TEST(MultipleDiscriminant, OrderFoldsFromLast) {
    auto r = ring_of({"x", "y", "v"});
    const MultiPoly p = P("x^2*y + y^2 + x - v", r);
    const auto res = multiple_discriminant(p, {0, 1});
    ASSERT_EQ(res.stages.size(), 2u);
    EXPECT_EQ(res.stages[0].variable, 1u);
    EXPECT_EQ(res.value, discriminant_wrt(discriminant_wrt(p, 1), 0));
}

TEST(MultipleDiscriminant, AbsentVariableSkippedWithWarning) {
    auto r = ring_of({"x", "y", "v"});
    const auto res = multiple_discriminant(P("x^2 - v", r), {0, 1});
    ASSERT_EQ(res.warnings.size(), 1u);
    EXPECT_NE(res.warnings[0].find("stage 1 (y)"), std::string::npos);
    EXPECT_TRUE(res.stages[0].skipped);
    EXPECT_EQ(res.value, P("4*v", r));
}

TEST(MultipleDiscriminant, SquarefreeModeAvoidsDegeneracy) {
    auto r = ring_of({"x", "y", "v"});
    MultiDiscOptions opts;
    opts.squarefree_each_stage = true;
    const auto res = multiple_discriminant(P("x^2*y^2 - v", r), {0, 1}, opts);
    EXPECT_FALSE(res.value.is_zero());
    EXPECT_EQ(substitute(res.value, 2, Rat{0}), MultiPoly(r));
    EXPECT_FALSE(res.warnings.empty());
}

TEST(MultipleDiscriminant, BadOrders) {
    auto r = ring_of({"x", "y"});
    EXPECT_THROW(multiple_discriminant(P("x + y", r), {}), Error);
    EXPECT_THROW(multiple_discriminant(P("x + y", r), {0, 0}), Error);
    EXPECT_THROW(multiple_discriminant(P("x + y", r), {4}), VariableAbsent);
}

TEST(Cancellation, StopBeforeStartThrows) {
    auto r = ring_of({"x", "y", "v"});
    std::stop_source src;
    src.request_stop();
    EXPECT_THROW(multiple_discriminant(P("x^3 + y^3 - v", r), {0, 1}, {}, src.get_token()), Cancelled);
    PolyMatrix m(r, 5);
    for (std::size_t i = 0; i < 5; ++i) m(i, i) = P("x", r);
    EXPECT_THROW(determinant_bareiss(m, src.get_token()), Cancelled);
}

TEST(GenericDiscriminant, QuadraticAndPartials) {
    const auto& g = generic_discriminant(2);
    EXPECT_EQ(g.disc, parse_poly("a1^2 - 4*a0", g.ring));
    EXPECT_EQ(g.partials[1], parse_poly("2*a1", g.ring));
    EXPECT_EQ(g.partials[0], parse_poly("-4", g.ring));
    const std::vector<Rat> at{Rat{1}, Rat{-2}, Rat{0}};
    EXPECT_EQ(evaluate(g.partials[1], at), Rat{-4});
    EXPECT_EQ(evaluate(g.partials[0], at), Rat{-4});
    EXPECT_THROW(generic_discriminant(1), Error);
    EXPECT_THROW(generic_discriminant(7), Error);
}

TEST(GenericDiscriminant, DepressedCubic) {
    const auto& g = generic_discriminant(3);
    EXPECT_EQ(substitute(g.disc, 2, Rat{0}), parse_poly("-4*a1^3 - 27*a0^2", g.ring));
}

TEST(DeltaDiscriminant, WorkedValues) {
    const MultiPoly p = parse_poly("x^2 - 2*x + 1");
    EXPECT_EQ(delta_discriminant(VariationPair(p, parse_poly("x - 1", p.ring()))), Rat{0});
    EXPECT_EQ(delta_discriminant(VariationPair(p, parse_poly("1", p.ring()))), Rat{-4});
    EXPECT_EQ(delta_discriminant(VariationPair(p, MultiPoly(p.ring()))), Rat{0});
    EXPECT_THROW(VariationPair(parse_poly("2*x^2 + 1"), parse_poly("x")), Error);
    EXPECT_THROW(VariationPair(p, parse_poly("x^2", p.ring())), Error);
}

TEST(LeadingCoeffRelation, WorkedValues) {
    auto r = ring_of({"c", "x"});
    EXPECT_TRUE(check_leading_coeff_relation(UniView(P("2*x^2 + 2*c", r), 1), 0, Rat{3}));
    EXPECT_TRUE(check_leading_coeff_relation(UniView(P("x^2 + c*x + 1", r), 1), 0, Rat{5, 2}));
    auto s = ring_of({"x", "y"});
    EXPECT_TRUE(check_leading_coeff_relation(UniView(parse_poly("y*x^2 + 1", s), 0), 1, Rat{1}));
    EXPECT_THROW(check_leading_coeff_relation(UniView(parse_poly("y*x^2 + 1", s), 0), 1, Rat{0}), Error);
}
