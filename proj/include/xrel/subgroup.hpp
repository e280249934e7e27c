#pragma once

// Finite-rank subgroups given by generators plus a torsion list, enumerated
// over coefficient boxes.

#include "xrel/curve.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace xrel {

struct SubgroupSpec {
    std::vector<CurvePoint> generators;
    std::vector<CurvePoint> torsion{CurvePoint::infinity()};

    std::size_t rank() const { return generators.size(); }
};

struct GroupElement {
    std::vector<long> coeffs;
    std::size_t torsion_index = 0;
    CurvePoint point;
    /// Set when an earlier element (in enumeration order) has the same point.
    bool duplicate = false;
    std::size_t first_occurrence = 0;
};

struct EnumerationLimits {
    int max_box = 16;
    std::size_t max_elements = 4'000'000;
};

class invalid_subgroup : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void validate_subgroup(const WeierstrassCurve& E, const SubgroupSpec& spec)
{
    for (const auto& g : spec.generators)
        if (!E.contains(g))
            throw invalid_subgroup("generator " + g.str() + " is not on the curve");
    bool has_identity = false;
    for (const auto& t : spec.torsion) {
        if (!E.contains(t))
            throw invalid_subgroup("torsion point " + t.str() + " is not on the curve");
        has_identity = has_identity || t.is_infinity();
        bool closed = false;
        CurvePoint neg = E.negate(t);
        for (const auto& s : spec.torsion)
            closed = closed || s == neg;
        if (!closed)
            throw invalid_subgroup("torsion list is not closed under negation (missing -" + t.str() + ")");
    }
    if (!has_identity)
        throw invalid_subgroup("torsion list must contain the point at infinity");
}

/// Size of the box enumeration before duplicate flagging: (2N + 1)^r * #torsion.
inline std::size_t enumeration_size(const SubgroupSpec& spec, int box)
{
    std::size_t n = spec.torsion.size();
    for (std::size_t k = 0; k < spec.rank(); ++k)
        n *= static_cast<std::size_t>(2 * box + 1);
    return n;
}

/// All sum_k n_k g_k + t with |n_k| <= box, in lexicographic order of
/// (n_1, ..., n_r, torsion index). Each point costs one addition from its
/// prefix in the box.
inline std::vector<GroupElement> enumerate(const WeierstrassCurve& E, const SubgroupSpec& spec, int box,
                                           const EnumerationLimits& limits = {})
{
    if (box < 0)
        throw std::invalid_argument("box size must be non-negative");
    if (box > limits.max_box)
        throw std::invalid_argument("box size " + std::to_string(box) + " exceeds the limit " +
                                    std::to_string(limits.max_box));
    validate_subgroup(E, spec);
    if (enumeration_size(spec, box) > limits.max_elements)
        throw std::invalid_argument("enumeration would exceed " + std::to_string(limits.max_elements) + " elements");

    const std::size_t r = spec.rank();
    const std::size_t width = static_cast<std::size_t>(2 * box + 1);
    // multiples[k][n + box] = [n] g_k
    std::vector<std::vector<CurvePoint>> multiples(r, std::vector<CurvePoint>(width));
    for (std::size_t k = 0; k < r; ++k) {
        const CurvePoint& g = spec.generators[k];
        CurvePoint neg = E.negate(g);
        auto& row = multiples[k];
        row[static_cast<std::size_t>(box)] = CurvePoint::infinity();
        for (int n = 1; n <= box; ++n) {
            row[static_cast<std::size_t>(box + n)] = E.add_unchecked(row[static_cast<std::size_t>(box + n - 1)], g);
            row[static_cast<std::size_t>(box - n)] = E.add_unchecked(row[static_cast<std::size_t>(box - n + 1)], neg);
        }
    }

    std::vector<GroupElement> out;
    out.reserve(enumeration_size(spec, box));
    std::vector<long> coeffs(r);
    auto rec = [&](auto&& self, std::size_t k, const CurvePoint& prefix) -> void {
        if (k == r) {
            for (std::size_t t = 0; t < spec.torsion.size(); ++t) {
                GroupElement el;
                el.coeffs = coeffs;
                el.torsion_index = t;
                el.point = E.add_unchecked(prefix, spec.torsion[t]);
                out.push_back(std::move(el));
            }
            return;
        }
        for (std::size_t i = 0; i < width; ++i) {
            coeffs[k] = static_cast<long>(i) - box;
            self(self, k + 1, E.add_unchecked(prefix, multiples[k][i]));
        }
    };
    rec(rec, 0, CurvePoint::infinity());

    std::map<CurvePoint, std::size_t> first;
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto [it, inserted] = first.emplace(out[i].point, i);
        out[i].first_occurrence = it->second;
        out[i].duplicate = !inserted;
    }
    return out;
}

} // namespace xrel
