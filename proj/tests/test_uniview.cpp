#include <gtest/gtest.h>

#include "mdisc/uniview.hpp"
#include "support.hpp"

using namespace mdisc;
using namespace testing_support;

namespace {

// a and b agree up to a nonzero rational factor.
bool proportional(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a * b.leading_term().second == b * a.leading_term().second;
}

}  // namespace

TEST(UniView, CoefficientsAndReassembly) {
    auto r = ring_of({"x", "y"});
    const MultiPoly p = parse_poly("y*x^2 + 3*x - y^2", r);
    const UniView v(p, 0);
    EXPECT_EQ(v.degree(), 2);
    EXPECT_EQ(v.leading(), parse_poly("y", r));
    EXPECT_EQ(v.coeff(0), parse_poly("-y^2", r));
    EXPECT_EQ(v.reassemble(), p);
    EXPECT_THROW(UniView(MultiPoly(r), 0), Error);
    EXPECT_THROW(UniView(p, 5), VariableAbsent);
}

TEST(Squarefree, WorkedExamples) {
    auto r = ring_of({"v", "x", "y"});
    EXPECT_TRUE(proportional(squarefree_part(UniView(parse_poly("x^2", r), 1)).reassemble(), parse_poly("x", r)));
    EXPECT_TRUE(proportional(squarefree_part(UniView(parse_poly("x^2 - v", r), 1)).reassemble(),
                             parse_poly("x^2 - v", r)));
    EXPECT_TRUE(proportional(squarefree_part(UniView(parse_poly("(x - y)^2*(x + y)", r), 1)).reassemble(),
                             parse_poly("(x - y)*(x + y)", r)));
    EXPECT_THROW(squarefree_part(UniView(parse_poly("y", r), 1)), Error);
}

TEST(Squarefree, KeepsContentInOtherVariables) {
    auto r = ring_of({"x", "y"});
    // y^2 is content in x: it is not a repeated factor over Q(y)[x].
    const UniView s = squarefree_part(UniView(parse_poly("y^2*x^2 - y^2", r), 0));
    EXPECT_TRUE(proportional(s.reassemble(), parse_poly("y^2*x^2 - y^2", r)));
}

TEST(Squarefree, NormalisedUnit) {
    auto r = ring_of({"x"});
    const UniView s = squarefree_part(UniView(parse_poly("-6*(x - 1)^3", r), 0));
    EXPECT_EQ(s.reassemble(), parse_poly("x - 1", r));
}

TEST(PolyGcd, MatchesConstruction) {
    auto r = ring_of({"x", "y"});
    for (int k = 0; k < 40; ++k) {
        const MultiPoly g = parse_poly("x", r) + rand_poly(r, {0, 2}, 2, 3);
        const MultiPoly a = parse_poly("x^2", r) + rand_poly(r, {1, 2}, 3, 4);
        const MultiPoly b = parse_poly("x^2", r) + rand_poly(r, {1, 2}, 3, 4) + parse_poly("1", r);
        const MultiPoly d = detail::poly_gcd(g * a, g * b);
        // d is a multiple of g and divides both products.
        EXPECT_NO_THROW(exact_divide(d, g));
        EXPECT_NO_THROW(exact_divide(g * a, d));
        EXPECT_NO_THROW(exact_divide(g * b, d));
    }
}

// squarefree_part(q1^2 q2) is proportional to q1 q2 when q1, q2 are monic in x
// and coprime.
TEST(SquarefreeProperty, CollapsesSquares) {
    auto r = ring_of({"x", "y"});
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        const MultiPoly q1 = parse_poly("x^2", r) + rand_poly(r, {1, 2}, 2, 3);
        const MultiPoly q2 = parse_poly("x", r) + rand_poly(r, {0, 2}, 2, 3);
        const MultiPoly g = detail::poly_gcd(q1, q2);
        if (degree_in(g, 0) > 0) continue;
        // q1 itself must be squarefree in x.
        if (degree_in(detail::poly_gcd(q1, partial_derivative(q1, 0)), 0) > 0) continue;
        ++checked;
        const UniView s = squarefree_part(UniView(q1 * q1 * q2, 0));
        EXPECT_TRUE(proportional(s.reassemble(), q1 * q2)) << format_poly(q1) << " | " << format_poly(q2);
    }
    EXPECT_GE(checked, 30);
}
