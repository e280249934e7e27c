#include "support.hpp"
#include "xrel/search.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace xrel;
using xrel::testing::Gen;

namespace {

SubgroupSpec lemniscatic_torsion()
{
    SubgroupSpec s;
    s.torsion = {CurvePoint::infinity(), CurvePoint(0, 0), CurvePoint(1, 0), CurvePoint(-1, 0)};
    return s;
}

SubgroupSpec rank_one()
{
    SubgroupSpec s;
    s.generators = {CurvePoint(0, mpq_class(1, 2))};
    return s;
}

std::set<std::array<std::string, 3>> triple_texts(const SearchResult& r)
{
    std::set<std::array<std::string, 3>> out;
    for (const auto& rec : r.solutions)
        out.insert({rec.points[0].str(), rec.points[1].str(), rec.points[2].str()});
    return out;
}

} // namespace

TEST(Search, TorsionOfLemniscaticCurve)
{
    WeierstrassCurve E(0, -1, 0);
    RelationCoeffs c(1, 1, 2);
    SearchResult r = find_solutions(E, c, lemniscatic_torsion(), 0);
    EXPECT_EQ(r.families.size(), 9u);
    EXPECT_EQ(r.summary.total, 5u);
    EXPECT_EQ(r.summary.trivial, 5u);
    EXPECT_EQ(r.summary.sporadic, 0u);

    // Independent oracle: all 27 triples of non-identity torsion points.
    std::set<std::array<std::string, 3>> want;
    const std::vector<CurvePoint> pts{CurvePoint(0, 0), CurvePoint(1, 0), CurvePoint(-1, 0)};
    for (const auto& a : pts)
        for (const auto& b : pts)
            for (const auto& d : pts)
                if ((a.x() + b.x() + QuadNum(2) * d.x()).is_zero())
                    want.insert({a.str(), b.str(), d.str()});
    EXPECT_EQ(want.size(), 5u);
    EXPECT_EQ(triple_texts(r), want);
}

TEST(Search, IdentityOnlyHasNoSolutions)
{
    WeierstrassCurve E(0, -1, 0);
    SearchResult r = find_solutions(E, RelationCoeffs(1, 1, 1), SubgroupSpec{}, 0);
    EXPECT_EQ(r.summary.total, 0u);
}

TEST(Search, RankOneSnapshot)
{
    WeierstrassCurve E(0, -1, mpq_class(1, 4));
    RelationCoeffs c(1, 1, 1);
    SearchResult r = find_solutions(E, c, rank_one(), 8);
    EXPECT_EQ(r.summary.elements, 17u);
    EXPECT_EQ(r.summary.distinct_nonzero, 16u);
    EXPECT_EQ(r.summary.total, 80u);
    EXPECT_EQ(r.summary.trivial, 0u);
    EXPECT_EQ(r.summary.sporadic, 80u);
    for (const auto& rec : r.solutions)
        EXPECT_TRUE(relation_holds(c, rec.points));
}

TEST(Search, BruteForceAgreesOnSmallBoxes)
{
    // Cubic-time oracle over the same distinct non-identity elements.
    WeierstrassCurve E(0, -1, mpq_class(1, 4));
    for (const RelationCoeffs& c : {RelationCoeffs(1, 1, 1), RelationCoeffs(1, -1, 1), RelationCoeffs(2, 1, -3)}) {
        SearchResult r = find_solutions(E, c, rank_one(), 5);
        std::set<std::array<std::string, 3>> want;
        std::vector<CurvePoint> pts;
        for (const auto& e : r.elements)
            if (!e.duplicate && !e.point.is_infinity())
                pts.push_back(e.point);
        for (const auto& a : pts)
            for (const auto& b : pts)
                for (const auto& d : pts)
                    if ((c[0] * a.x() + c[1] * b.x() + c[2] * d.x()).is_zero())
                        want.insert({a.str(), b.str(), d.str()});
        EXPECT_EQ(triple_texts(r), want);
        EXPECT_EQ(r.summary.total, want.size());
    }
}

TEST(Search, SubsumZeroGivesTrivialSolutions)
{
    // c1 + c2 = 0: every (P, -P, R) with x(R) = 0 lies on a (P, [-1]P, R) family.
    WeierstrassCurve E(0, -1, mpq_class(1, 4));
    RelationCoeffs c(1, -1, 1);
    SearchResult r = find_solutions(E, c, rank_one(), 4);
    EXPECT_GT(r.summary.trivial, 0u);
    for (const auto& rec : r.solutions) {
        if (!rec.trivial())
            continue;
        const Family* f = nullptr;
        for (const auto& fam : r.families.families)
            if (fam.id == rec.family_id)
                f = &fam;
        ASSERT_NE(f, nullptr);
        EXPECT_TRUE(member(E, f->desc, rec.points));
    }
}

TEST(Search, ThreadCountDoesNotChangeOutput)
{
    WeierstrassCurve E(0, -1, mpq_class(1, 4));
    RelationCoeffs c(1, 1, 1);
    SearchResult one = find_solutions(E, c, rank_one(), 8);
    for (unsigned t : {2u, 3u, 8u}) {
        SearchOptions opts;
        opts.threads = t;
        SearchResult many = find_solutions(E, c, rank_one(), 8, opts);
        ASSERT_EQ(many.solutions.size(), one.solutions.size());
        for (std::size_t i = 0; i < one.solutions.size(); ++i) {
            EXPECT_EQ(many.solutions[i].elements, one.solutions[i].elements);
            EXPECT_EQ(many.solutions[i].family_id, one.solutions[i].family_id);
        }
    }
}

TEST(Search, StabilizationCountsAreMonotone)
{
    WeierstrassCurve E(0, -1, mpq_class(1, 4));
    RelationCoeffs c(1, 1, 1);
    std::size_t prev = 0;
    for (int box : {2, 4, 8}) {
        SearchResult r = find_solutions(E, c, rank_one(), box);
        EXPECT_GE(r.summary.sporadic, prev);
        prev = r.summary.sporadic;
    }
}

TEST(FiberCount, Examples)
{
    WeierstrassCurve E(0, -1, 0);
    EXPECT_EQ(fiber_count(E, {QuadNum(2), QuadNum(3), QuadNum(-4)}), 8);
    EXPECT_EQ(fiber_count(E, {QuadNum(0), QuadNum(2), QuadNum(3)}), 4);
    EXPECT_EQ(fiber_count(E, {QuadNum(0), QuadNum(1), QuadNum(-1)}), 1);
}

TEST(FiberCount, GenericTriples)
{
    WeierstrassCurve E(0, -1, 0);
    Gen g(61);
    int checked = 0;
    while (checked < 20) {
        QuadNum x1 = g.quad(1, 30), x2 = g.quad(1, 30);
        QuadNum x3 = -(x1 + x2) / QuadNum(2);
        if (E.rhs(x1).is_zero() || E.rhs(x2).is_zero() || E.rhs(x3).is_zero())
            continue;
        EXPECT_EQ(fiber_count(E, {x1, x2, x3}), 8);
        ++checked;
    }
}
