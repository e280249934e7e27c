#pragma once

// Solution search for c1 x(P1) + c2 x(P2) + c3 x(P3) = 0 over an enumerated
// box of a finite-rank subgroup, with trivial/sporadic classification.

#include "xrel/kawamata.hpp"
#include "xrel/subgroup.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace xrel {

struct SolutionRecord {
    std::array<std::size_t, 3> elements{};
    Triple points;
    /// Empty for sporadic solutions.
    std::string family_id;

    bool trivial() const { return !family_id.empty(); }
};

struct SearchSummary {
    int box = 0;
    std::size_t elements = 0;
    std::size_t distinct_nonzero = 0;
    std::size_t total = 0;
    std::size_t trivial = 0;
    std::size_t sporadic = 0;
    std::map<std::string, std::size_t> per_family;
};

struct SearchOptions {
    unsigned threads = 1;
    CmMode cm;
    EnumerationLimits limits;
};

struct SearchResult {
    std::vector<GroupElement> elements;
    FamilyList families;
    std::vector<SolutionRecord> solutions;
    SearchSummary summary;
};

class search_invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline bool relation_holds(const RelationCoeffs& c, const Triple& t)
{
    for (const auto& P : t)
        if (P.is_infinity())
            return false;
    return (c[0] * t[0].x() + c[1] * t[1].x() + c[2] * t[2].x()).is_zero();
}

/// Number of points of E^3 over the algebraic closure with the given x-coordinates.
inline int fiber_count(const WeierstrassCurve& E, const std::array<QuadNum, 3>& xs)
{
    int n = 1;
    for (const auto& x : xs)
        n *= E.rhs(x).is_zero() ? 1 : 2;
    return n;
}

/// All solution triples among the distinct non-identity points of the box.
/// For each (P1, P2) the third x-coordinate is solved for and looked up in a
/// sorted index, so the cost is O(M^2 log M). Output order is the
/// enumeration order of (P1, P2, P3) and does not depend on `threads`.
inline SearchResult find_solutions(const WeierstrassCurve& E, const RelationCoeffs& coeffs, const SubgroupSpec& spec,
                                   int box, const SearchOptions& opts = {})
{
    SearchResult res;
    res.families = classify(E, coeffs, opts.cm);
    res.elements = enumerate(E, spec, box, opts.limits);

    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < res.elements.size(); ++i)
        if (!res.elements[i].duplicate && !res.elements[i].point.is_infinity())
            cand.push_back(i);

    std::map<QuadNum, std::vector<std::size_t>> by_x;
    for (std::size_t i : cand)
        by_x[res.elements[i].point.x()].push_back(i);
    for (auto& [x, v] : by_x)
        std::sort(v.begin(), v.end());

    const QuadNum neg_inv_c3 = QuadNum(-1) / coeffs[2];
    auto work = [&](std::size_t lo, std::size_t hi, std::vector<SolutionRecord>& sink) {
        for (std::size_t ia = lo; ia < hi; ++ia) {
            const std::size_t a = cand[ia];
            const QuadNum xa = coeffs[0] * res.elements[a].point.x();
            for (std::size_t b : cand) {
                QuadNum x3 = (xa + coeffs[1] * res.elements[b].point.x()) * neg_inv_c3;
                auto it = by_x.find(x3);
                if (it == by_x.end())
                    continue;
                for (std::size_t c : it->second) {
                    SolutionRecord rec;
                    rec.elements = {a, b, c};
                    rec.points = {res.elements[a].point, res.elements[b].point, res.elements[c].point};
                    if (const Family* f = find_family(E, res.families, rec.points))
                        rec.family_id = f->id;
                    sink.push_back(std::move(rec));
                }
            }
        }
    };

    const unsigned threads = std::max(1u, opts.threads);
    std::vector<std::vector<SolutionRecord>> parts(threads);
    if (threads == 1) {
        work(0, cand.size(), parts[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = cand.size() * t / threads, hi = cand.size() * (t + 1) / threads;
            pool.emplace_back(work, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool)
            th.join();
    }
    for (auto& p : parts)
        for (auto& r : p)
            res.solutions.push_back(std::move(r));

    SearchSummary& s = res.summary;
    s.box = box;
    s.elements = res.elements.size();
    s.distinct_nonzero = cand.size();
    for (const auto& f : res.families.families)
        s.per_family[f.id] = 0;
    for (const auto& r : res.solutions) {
        if (!relation_holds(coeffs, r.points))
            throw search_invariant_violation("search produced a triple that fails the relation");
        if (r.trivial()) {
            ++s.trivial;
            ++s.per_family[r.family_id];
        } else {
            ++s.sporadic;
        }
    }
    s.total = res.solutions.size();
    return res;
}

} // namespace xrel
