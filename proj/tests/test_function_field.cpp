#include "support.hpp"
#include "xrel/cm.hpp"

#include <gtest/gtest.h>

using namespace xrel;
using xrel::testing::Gen;

namespace {

QPoly poly(std::vector<long> c)
{
    std::vector<QuadNum> q;
    for (long v : c)
        q.emplace_back(v);
    return QPoly(std::move(q));
}

WeierstrassCurve E1() { return WeierstrassCurve(1, -3, 1); }

} // namespace

TEST(Polynomial, DivmodReconstructs)
{
    Gen g(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<QuadNum> a, b;
        for (int i = 0; i < 6; ++i)
            a.push_back(g.quad(-1, 5));
        for (int i = 0; i < 3; ++i)
            b.push_back(g.quad(-1, 5));
        QPoly pa(a), pb(b);
        if (pb.is_zero())
            continue;
        auto [q, r] = QPoly::divmod(pa, pb);
        EXPECT_EQ(q * pb + r, pa);
        EXPECT_LT(r.degree(), pb.degree());
    }
}

TEST(Polynomial, GcdOfProducts)
{
    QPoly common = poly({-1, 1});          // X - 1
    QPoly a = common * poly({2, 0, 1});   // (X - 1)(X^2 + 2)
    QPoly b = common * poly({3, 1});      // (X - 1)(X + 3)
    EXPECT_EQ(gcd(a, b), common);
    EXPECT_EQ(a.derivative(), poly({2, -2, 3}));
}

TEST(RationalFunction, NormalizesCommonFactors)
{
    QRatFunc r(poly({-1, 0, 1}), poly({-1, 1})); // (X^2 - 1) / (X - 1)
    EXPECT_EQ(r, QRatFunc(poly({1, 1})));
    EXPECT_EQ(r(QuadNum(4)), QuadNum(5));
    QRatFunc s(poly({1}), poly({0, 1}));
    EXPECT_THROW(s(QuadNum(0)), std::domain_error);
}

TEST(CurveFunction, YSquaredReducesToCubic)
{
    WeierstrassCurve E(0, -1, 0);
    CurveFunction Y = CurveFunction::y(E);
    CurveFunction X = CurveFunction::x(E);
    EXPECT_EQ(Y * Y, X * X * X - X);
}

TEST(CurveFunction, InverseOnRandomElements)
{
    WeierstrassCurve E = E1();
    Gen g(22);
    for (int trial = 0; trial < 30; ++trial) {
        CurveFunction f = CurveFunction::constant(E, g.quad(1, 4)) + CurveFunction::x(E) * g.quad(1, 4) +
                          CurveFunction::y(E) * g.quad(1, 4);
        if (f.is_zero())
            continue;
        EXPECT_EQ(f * f.inverse(), CurveFunction::constant(E, 1));
    }
}

TEST(CurveFunction, EvaluationMatchesPointArithmetic)
{
    WeierstrassCurve E(0, -1, mpq_class(1, 4));
    CurvePoint P(0, mpq_class(1, 2));
    auto m2 = maps::multiply(E, 2);
    ASSERT_TRUE(m2.has_value());
    for (const auto& Q : xrel::testing::multiples(E, P, 5)) {
        CurvePoint D = E.scalar_mul(2, Q);
        if (D.is_infinity())
            continue;
        EXPECT_EQ(m2->x(Q), D.x());
        EXPECT_EQ(m2->y(Q), D.y());
    }
}

TEST(CurveFunction, TranslationMatchesAddition)
{
    WeierstrassCurve E = E1();
    CurvePoint T(1, 0);
    PointMap tr = maps::translate(E, T);
    for (const auto& Q : E.lift_x(QuadNum(2))) {
        CurvePoint R = E.add(Q, T);
        EXPECT_EQ(tr.x(Q), R.x());
        EXPECT_EQ(tr.y(Q), R.y());
    }
}

TEST(SqrtMinus2, SquareIsMultiplicationByMinusTwo)
{
    WeierstrassCurve E = E1();
    PointMap s = sqrt_minus2_map(E);
    PointMap ss = maps::compose(s, s);
    auto m = maps::multiply(E, -2);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(ss.x, m->x);
    EXPECT_EQ(ss.y, m->y);
}

TEST(SqrtMinus2, ImageLiesOnTheCurve)
{
    WeierstrassCurve E = E1();
    PointMap s = sqrt_minus2_map(E);
    CurveFunction lhs = s.y * s.y;
    CurveFunction x = s.x;
    CurveFunction rhs = x * x * x + x * x * E.A() + x * E.B() + CurveFunction::constant(E, E.C());
    EXPECT_EQ(lhs, rhs);
}

TEST(SqrtMinus2, SpotValueAtXEqualsTwo)
{
    // X = 2 on E_1: -(2 + 1 + 2/(2 - 1)) / 2 = -5/2
    WeierstrassCurve E = E1();
    EXPECT_EQ(sqrt_minus2_map(E).x.x_part()(QuadNum(2)), QuadNum(mpq_class(-5, 2)));
}

TEST(SqrtMinus2, RelationIdentityOnE1)
{
    WeierstrassCurve E = E1();
    CurveFunction lhs = sqrt_minus2_map(E).x * QuadNum(2) + CurveFunction::x(E) +
                        maps::translate(E, CurvePoint(1, 0)).x;
    EXPECT_TRUE(lhs.is_zero()) << lhs.str();
}

TEST(RelationCoeffs, RejectsZero)
{
    EXPECT_THROW(RelationCoeffs(1, 0, 2), std::invalid_argument);
}
