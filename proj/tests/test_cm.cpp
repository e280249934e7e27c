#include "support.hpp"
#include "xrel/cm.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace xrel;
using xrel::testing::Gen;

namespace {

std::set<std::string> texts(const std::vector<QuadNum>& v)
{
    std::set<std::string> out;
    for (const auto& q : v)
        out.insert(q.str());
    return out;
}

/// Brute-force oracle: a + b sqrt(d) (or halves when d = 1 mod 4) with small |a|, |b|.
std::set<std::string> brute_norm(std::int64_t d, long n)
{
    std::set<std::string> out;
    const bool half = ((d % 4) + 4) % 4 == 1;
    for (long a = -20; a <= 20; ++a)
        for (long b = -20; b <= 20; ++b) {
            mpq_class p = half ? mpq_class(a, 2) : mpq_class(a);
            mpq_class q = half ? mpq_class(b, 2) : mpq_class(b);
            if (half && (a - b) % 2 != 0)
                continue;
            QuadNum z(p, q, d);
            if (z.norm() == n)
                out.insert(z.str());
        }
    return out;
}

} // namespace

TEST(SolveNorm, UnitsOfGaussianAndEisensteinIntegers)
{
    EXPECT_EQ(solve_norm(-1, 1).size(), 4u);
    EXPECT_EQ(solve_norm(-3, 1).size(), 6u);
    EXPECT_EQ(solve_norm(-2, 1).size(), 2u);
    EXPECT_EQ(solve_norm(-7, 1).size(), 2u);
}

TEST(SolveNorm, DegreeTwoForMinusSeven)
{
    std::set<std::string> want{"-1/2 - 1/2*sqrt(-7)", "-1/2 + 1/2*sqrt(-7)", "1/2 - 1/2*sqrt(-7)",
                               "1/2 + 1/2*sqrt(-7)"};
    EXPECT_EQ(texts(solve_norm(-7, 2)), want);
}

TEST(SolveNorm, MatchesBruteForce)
{
    for (std::int64_t d : {-1, -2, -3, -5, -7, -11, -15, -19})
        for (long n = 1; n <= 20; ++n)
            EXPECT_EQ(texts(solve_norm(d, n)), brute_norm(d, n)) << "d=" << d << " n=" << n;
}

TEST(SolveNorm, RejectsBadInput)
{
    EXPECT_THROW(solve_norm(2, 1), std::invalid_argument);
    EXPECT_THROW(solve_norm(-4, 1), std::invalid_argument);
    EXPECT_THROW(solve_norm(-1, 0), std::invalid_argument);
}

TEST(Units, Catalog)
{
    EXPECT_EQ(units_of(WeierstrassCurve(0, -1, 0)).size(), 4u);
    EXPECT_EQ(units_of(WeierstrassCurve(0, 0, 1)).size(), 6u);
    EXPECT_EQ(units_of(WeierstrassCurve(0, -1, mpq_class(1, 4))).size(), 2u);
    EXPECT_EQ(units_of(WeierstrassCurve(3, 2, 0)).size(), 4u); // j = 1728 after the shift
    EXPECT_EQ(units_of(WeierstrassCurve(0, -1, 0), CmMode::parse("none")).size(), 2u);
    EXPECT_EQ(units_of(WeierstrassCurve(0, -1, 0), CmMode::parse("d=-3")).size(), 6u);
}

TEST(CmMode, Parse)
{
    EXPECT_EQ(CmMode::parse("auto").str(), "auto");
    EXPECT_EQ(CmMode::parse("none").str(), "none");
    EXPECT_EQ(CmMode::parse("d=-7").str(), "d=-7");
    EXPECT_THROW(CmMode::parse("d=5"), std::invalid_argument);
    EXPECT_THROW(CmMode::parse("d=-4"), std::invalid_argument);
    EXPECT_THROW(CmMode::parse("maybe"), std::invalid_argument);
}

TEST(Endomorphisms, UnitsAreHomomorphisms)
{
    WeierstrassCurve E(0, -1, 0, -1);
    QuadNum i = QuadNum::sqrt_of(-1);
    std::vector<CurvePoint> pts{CurvePoint(0, 0), CurvePoint(1, 0)};
    for (const auto& P : E.lift_x(i))
        pts.push_back(P);
    for (const auto& P : E.lift_x(QuadNum(2) * i))
        pts.push_back(P);
    EndoDescriptor ui(i);
    for (const auto& P : pts) {
        CurvePoint iP = endo_apply(E, ui, P);
        EXPECT_TRUE(E.contains(iP));
        EXPECT_EQ(endo_apply(E, ui, iP), E.negate(P));
        for (const auto& Q : pts)
            EXPECT_EQ(endo_apply(E, ui, E.add(P, Q)), E.add(iP, endo_apply(E, ui, Q)));
    }
}

TEST(Endomorphisms, GaussianIntegerComposition)
{
    WeierstrassCurve E(0, -1, 0, -1);
    QuadNum i = QuadNum::sqrt_of(-1);
    CurvePoint P = E.lift_x(i).at(0);
    // [1 + i]^2 = [2i]
    CurvePoint once = endo_apply(E, EndoDescriptor(QuadNum(1) + i), P);
    CurvePoint twice = endo_apply(E, EndoDescriptor(QuadNum(1) + i), once);
    EXPECT_EQ(twice, endo_apply(E, EndoDescriptor(QuadNum(2) * i), P));
}

TEST(Endomorphisms, EisensteinUnits)
{
    // y^2 = x^3 + 1 has j = 0; zeta_3 acts by x -> zeta_3^-2 x
    WeierstrassCurve E(0, 0, 1, -3);
    QuadNum z = zeta3();
    EXPECT_EQ(z.pow(3), QuadNum(1));
    CurvePoint P(2, 3);
    CurvePoint zP = endo_apply(E, EndoDescriptor(z), P);
    EXPECT_TRUE(E.contains(zP));
    EXPECT_EQ(endo_apply(E, EndoDescriptor(z * z), P), endo_apply(E, EndoDescriptor(z), zP));
    CurvePoint sum = E.add(E.add(P, zP), endo_apply(E, EndoDescriptor(z * z), P));
    EXPECT_EQ(sum, CurvePoint::infinity()); // 1 + zeta + zeta^2 = 0
}

TEST(Endomorphisms, UnitOnWrongCurveThrows)
{
    WeierstrassCurve E(0, -1, mpq_class(1, 4), -1);
    EXPECT_THROW(unit_map(E, QuadNum::sqrt_of(-1)), unsupported_endomorphism);
    EXPECT_THROW(sqrt_minus2_map(WeierstrassCurve(0, -1, 0)), unsupported_endomorphism);
    EXPECT_THROW(EndoDescriptor(QuadNum(mpq_class(1, 2))), std::invalid_argument);
}

TEST(Endomorphisms, SqrtMinus2OnPoints)
{
    WeierstrassCurve E(1, -3, 1, -2);
    QuadNum s = QuadNum::sqrt_of(-2);
    EXPECT_EQ(endo_apply(E, EndoDescriptor(s), CurvePoint(1, 0)), CurvePoint::infinity());
    for (long x = -3; x <= 4; ++x) {
        for (const auto& P : E.lift_x(QuadNum(x))) {
            CurvePoint S = endo_apply(E, EndoDescriptor(s), P);
            EXPECT_TRUE(E.contains(S));
            EXPECT_EQ(endo_apply(E, EndoDescriptor(s), S), E.scalar_mul(-2, P));
            EXPECT_EQ(endo_apply(E, EndoDescriptor(s), E.add(P, CurvePoint(1, 0))), S);
        }
    }
}

TEST(EaForm, Detection)
{
    EXPECT_EQ(*detect_Ea_form(WeierstrassCurve(1, -3, 1)), QuadNum(1));
    EXPECT_EQ(*detect_Ea_form(WeierstrassCurve(-2, -12, -8)), QuadNum(-2));
    EXPECT_FALSE(detect_Ea_form(WeierstrassCurve(0, -1, 0)).has_value());
}
