#pragma once

// Independent brute-force checks: the two-coset covering property of finite
// abelian groups, and exact derivation of the constant slot of (P, [u]P, R)
// families from the function field.

#include "xrel/cm.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace xrel {

class no_constant_solution : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Solves c_i X + c_j x([u]P) + c_k t = 0 in the function field for the constant t.
/// `slots` = (i, j, k), zero-based.
inline QuadNum derive_caseB_constant(const WeierstrassCurve& E, const RelationCoeffs& c, const std::array<int, 3>& slots,
                                     const QuadNum& u)
{
    auto [i, j, k] = slots;
    CurveFunction g = CurveFunction::x(E) * c[static_cast<std::size_t>(i)] +
                      x_function_compose(E, Transform::unit_endo(u)) * c[static_cast<std::size_t>(j)];
    if (!g.is_constant())
        throw no_constant_solution("c_i X + c_j x([" + u.str() + "]P) is not constant: " + g.str());
    return -g.x_part().constant_value() / c[static_cast<std::size_t>(k)];
}

/// Z/n1 x Z/n2 x ... with n1 | n2 | ...; elements are mixed-radix integers.
class FiniteAbelianGroup {
public:
    static constexpr std::size_t max_order = 256;
    using set_t = std::bitset<max_order>;

    explicit FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors))
    {
        order_ = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] < 2)
                throw std::invalid_argument("invariant factors must be >= 2");
            if (i > 0 && factors_[i] % factors_[i - 1] != 0)
                throw std::invalid_argument("invariant factors must divide each other");
            order_ *= factors_[i];
        }
        if (order_ > static_cast<int>(max_order))
            throw std::invalid_argument("group too large for the scanner");
        sum_.assign(static_cast<std::size_t>(order_ * order_), 0);
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                sum_[static_cast<std::size_t>(a * order_ + b)] = add_slow(a, b);
    }

    int order() const { return order_; }
    const std::vector<int>& factors() const { return factors_; }
    int add(int a, int b) const { return sum_[static_cast<std::size_t>(a * order_ + b)]; }

    set_t full() const
    {
        set_t s;
        for (int g = 0; g < order_; ++g)
            s.set(static_cast<std::size_t>(g));
        return s;
    }

    set_t translate(const set_t& s, int b) const
    {
        set_t out;
        for (int g = 0; g < order_; ++g)
            if (s.test(static_cast<std::size_t>(g)))
                out.set(static_cast<std::size_t>(add(g, b)));
        return out;
    }

    /// Subgroup generated by s and g (s must already be a subgroup).
    set_t join(const set_t& s, int g) const
    {
        set_t out = s;
        int multiple = g;
        while (!out.test(static_cast<std::size_t>(multiple))) {
            out |= translate(s, multiple);
            multiple = add(multiple, g);
        }
        return out;
    }

    /// Every subgroup, found by closing under one extra generator at a time.
    std::vector<set_t> subgroups() const
    {
        set_t trivial;
        trivial.set(0);
        std::vector<set_t> all{trivial};
        std::unordered_set<set_t> seen{trivial};
        for (std::size_t idx = 0; idx < all.size(); ++idx) {
            for (int g = 0; g < order_; ++g) {
                if (all[idx].test(static_cast<std::size_t>(g)))
                    continue;
                set_t next = join(all[idx], g);
                if (seen.insert(next).second)
                    all.push_back(next);
            }
        }
        return all;
    }

    std::string str() const
    {
        std::string out;
        for (int f : factors_)
            out += (out.empty() ? "Z/" : " x Z/") + std::to_string(f);
        return out.empty() ? "0" : out;
    }

private:
    int add_slow(int a, int b) const
    {
        int out = 0, radix = 1;
        for (int f : factors_) {
            int da = (a / radix) % f, db = (b / radix) % f;
            out += ((da + db) % f) * radix;
            radix *= f;
        }
        return out;
    }

    std::vector<int> factors_;
    int order_ = 1;
    std::vector<int> sum_;
};

/// All invariant-factor lists (n1 | n2 | ...) of abelian groups of order n.
inline std::vector<std::vector<int>> abelian_groups_of_order(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> chain;
    auto rec = [&](auto&& self, int remaining, int prev) -> void {
        if (remaining == 1) {
            out.push_back(chain);
            return;
        }
        for (int f = prev; f <= remaining; f += prev) {
            if (f < 2 || remaining % f != 0)
                continue;
            chain.push_back(f);
            self(self, remaining / f, f);
            chain.pop_back();
        }
    };
    rec(rec, n, 1);
    return out;
}

struct CoveringInstance {
    std::string group;
    std::size_t h = 0, h_prime = 0;
    int b = 0;
    bool equal_subgroups = false;
    int index = 0;
};

struct Lemma2Report {
    int max_order = 0;
    std::size_t groups = 0;
    std::size_t subgroup_pairs = 0;
    std::size_t coverings = 0;
    std::size_t counterexamples = 0;
    std::vector<CoveringInstance> failures;
};

/// Covering instances G = H u (H' + b) with proper H, H' in one group.
inline std::vector<CoveringInstance> coverings_in(const FiniteAbelianGroup& G, std::size_t* pairs = nullptr)
{
    std::vector<CoveringInstance> out;
    auto subs = G.subgroups();
    const auto full = G.full();
    std::vector<FiniteAbelianGroup::set_t> proper;
    for (const auto& s : subs)
        if (s != full)
            proper.push_back(s);
    const std::size_t n = static_cast<std::size_t>(G.order());
    std::vector<std::size_t> sizes;
    for (const auto& s : proper)
        sizes.push_back(s.count());
    const std::size_t largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    if (pairs)
        *pairs += proper.size() * proper.size() * n;
    for (std::size_t hp = 0; hp < proper.size(); ++hp) {
        // |H u (H'+b)| <= |H| + |H'|, so pairs that are too small cannot cover.
        if (sizes[hp] + largest < n)
            continue;
        for (int b = 0; b < G.order(); ++b) {
            auto coset = G.translate(proper[hp], b);
            for (std::size_t h = 0; h < proper.size(); ++h) {
                if (sizes[h] + sizes[hp] < n)
                    continue;
                if ((proper[h] | coset) != full)
                    continue;
                CoveringInstance c;
                c.group = G.str();
                c.h = h;
                c.h_prime = hp;
                c.b = b;
                c.equal_subgroups = proper[h] == proper[hp];
                c.index = static_cast<int>(n / sizes[h]);
                out.push_back(c);
            }
        }
    }
    return out;
}

/// Scans every finite abelian group of order <= max_order.
inline Lemma2Report lemma2_scan(int max_order)
{
    if (max_order < 1 || max_order > static_cast<int>(FiniteAbelianGroup::max_order))
        throw std::invalid_argument("lemma2_scan needs 1 <= max_order <= 256");
    Lemma2Report rep;
    rep.max_order = max_order;
    for (int n = 1; n <= max_order; ++n) {
        for (const auto& factors : abelian_groups_of_order(n)) {
            ++rep.groups;
            if (factors.empty())
                continue;
            FiniteAbelianGroup G(factors);
            for (const auto& c : coverings_in(G, &rep.subgroup_pairs)) {
                ++rep.coverings;
                if (!c.equal_subgroups || c.index != 2) {
                    ++rep.counterexamples;
                    rep.failures.push_back(c);
                }
            }
        }
    }
    return rep;
}

} // namespace xrel
