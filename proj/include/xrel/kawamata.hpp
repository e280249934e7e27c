#pragma once

// Classification of the elliptic curves (translates of E embedded in E^3)
// lying on X = { c1 x1 + c2 x2 + c3 x3 = 0 }, with exact verification and
// membership tests.

#include "xrel/oracles.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace xrel {

/// {(P, e, e)} with P in `free_slot`.
struct CaseA {
    int free_slot = 0;
};

/// P in slots[0], [u]P in slots[1], the constant R in slots[2].
/// `r` is empty when no point with x = x_r exists over the working field.
struct CaseB {
    std::array<int, 3> slots{0, 1, 2};
    QuadNum u;
    QuadNum x_r;
    std::optional<CurvePoint> r;
};

/// {(P, [u]P, [v]P)}.
struct CaseC {
    QuadNum u, v;
};

/// [sqrt(-2)]P in slots[0], sign_p P in slots[1], sign_t P + (a, 0) in slots[2].
struct CaseD {
    std::array<int, 3> slots{0, 1, 2};
    int sign_p = 1;
    int sign_t = 1;
    QuadNum a;
};

using FamilyDescriptor = std::variant<CaseA, CaseB, CaseC, CaseD>;

struct Family {
    std::string id;
    FamilyDescriptor desc;
    bool verified = false;
};

struct FamilyList {
    std::vector<Family> families;

    std::size_t size() const { return families.size(); }
    std::size_t count(char which) const
    {
        return static_cast<std::size_t>(std::count_if(families.begin(), families.end(), [&](const Family& f) {
            return f.id.front() == which;
        }));
    }
};

using Triple = std::array<CurvePoint, 3>;

inline char case_letter(const FamilyDescriptor& d)
{
    return "ABCD"[d.index()];
}

/// True iff some subsum c1+c2, c1+c3, c2+c3, c1+c2+c3 vanishes.
inline bool subsum_zero(const RelationCoeffs& c)
{
    return (c[0] + c[1]).is_zero() || (c[0] + c[2]).is_zero() || (c[1] + c[2]).is_zero() ||
           (c[0] + c[1] + c[2]).is_zero();
}

/// x-coordinate functions of the three slots of a non-degenerate family.
inline std::array<CurveFunction, 3> slot_x_functions(const WeierstrassCurve& E, const FamilyDescriptor& desc)
{
    std::array<CurveFunction, 3> out;
    if (const auto* b = std::get_if<CaseB>(&desc)) {
        out[static_cast<std::size_t>(b->slots[0])] = CurveFunction::x(E);
        out[static_cast<std::size_t>(b->slots[1])] = x_function_compose(E, Transform::unit_endo(b->u));
        out[static_cast<std::size_t>(b->slots[2])] = CurveFunction::constant(E, b->x_r);
    } else if (const auto* c = std::get_if<CaseC>(&desc)) {
        out[0] = CurveFunction::x(E);
        out[1] = x_function_compose(E, Transform::unit_endo(c->u));
        out[2] = x_function_compose(E, Transform::unit_endo(c->v));
    } else if (const auto* d = std::get_if<CaseD>(&desc)) {
        PointMap signed_t = d->sign_t > 0 ? maps::identity(E) : maps::negate(E);
        PointMap shifted = maps::compose(maps::translate(E, CurvePoint(d->a, QuadNum(0))), signed_t);
        out[static_cast<std::size_t>(d->slots[0])] = x_function_compose(E, Transform::sqrtminus2_endo());
        out[static_cast<std::size_t>(d->slots[1])] = CurveFunction::x(E);
        out[static_cast<std::size_t>(d->slots[2])] = shifted.x;
    } else {
        throw std::invalid_argument("families with two coordinates at e_E have no affine x-relation");
    }
    return out;
}

/// Exact function-field check that the family lies on X. Families with two
/// slots at e_E lie on the boundary lines of X and pass structurally.
inline bool verify_family_symbolic(const WeierstrassCurve& E, const RelationCoeffs& coeffs, const FamilyDescriptor& desc)
{
    if (std::holds_alternative<CaseA>(desc))
        return true;
    if (const auto* d = std::get_if<CaseD>(&desc)) {
        auto a = detect_Ea_form(E);
        if (!a || *a != d->a)
            return false;
    }
    return identity_check(coeffs, slot_x_functions(E, desc));
}

/// True iff the triple lies on the family's curve in E^3.
inline bool member(const WeierstrassCurve& E, const FamilyDescriptor& desc, const Triple& t)
{
    for (const auto& P : t)
        if (!E.contains(P))
            return false;
    if (const auto* a = std::get_if<CaseA>(&desc)) {
        for (int s = 0; s < 3; ++s)
            if (s != a->free_slot && !t[static_cast<std::size_t>(s)].is_infinity())
                return false;
        return true;
    }
    if (const auto* b = std::get_if<CaseB>(&desc)) {
        const CurvePoint& P = t[static_cast<std::size_t>(b->slots[0])];
        const CurvePoint& Q = t[static_cast<std::size_t>(b->slots[1])];
        const CurvePoint& R = t[static_cast<std::size_t>(b->slots[2])];
        if (b->r) {
            if (R != *b->r)
                return false;
        } else if (R.is_infinity() || R.x() != b->x_r) {
            return false;
        }
        return Q == endo_apply(E, EndoDescriptor(b->u), P);
    }
    if (const auto* c = std::get_if<CaseC>(&desc)) {
        return t[1] == endo_apply(E, EndoDescriptor(c->u), t[0]) && t[2] == endo_apply(E, EndoDescriptor(c->v), t[0]);
    }
    const auto& d = std::get<CaseD>(desc);
    const CurvePoint& S = t[static_cast<std::size_t>(d.slots[0])];
    const CurvePoint& Pp = t[static_cast<std::size_t>(d.slots[1])];
    const CurvePoint& Pt = t[static_cast<std::size_t>(d.slots[2])];
    CurvePoint P = d.sign_p > 0 ? Pp : E.negate(Pp);
    CurvePoint T(d.a, QuadNum(0));
    if (S != endo_apply(E, EndoDescriptor(QuadNum::sqrt_of(-2)), P))
        return false;
    CurvePoint tP = d.sign_t > 0 ? P : E.negate(P);
    return Pt == E.add_unchecked(tP, T);
}

namespace detail {

inline std::string slot_key(const std::array<int, 3>& s)
{
    return std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]);
}

inline bool family_less(const FamilyDescriptor& x, const FamilyDescriptor& y)
{
    if (x.index() != y.index())
        return x.index() < y.index();
    if (const auto* a = std::get_if<CaseA>(&x))
        return a->free_slot < std::get<CaseA>(y).free_slot;
    if (const auto* b = std::get_if<CaseB>(&x)) {
        const auto& b2 = std::get<CaseB>(y);
        if (b->slots != b2.slots)
            return b->slots < b2.slots;
        if (b->u != b2.u)
            return b->u < b2.u;
        if (b->x_r != b2.x_r)
            return b->x_r < b2.x_r;
        return b->r.has_value() && b2.r.has_value() ? *b->r < *b2.r : !b->r.has_value() && b2.r.has_value();
    }
    if (const auto* c = std::get_if<CaseC>(&x)) {
        const auto& c2 = std::get<CaseC>(y);
        if (c->u != c2.u)
            return c->u < c2.u;
        return c->v < c2.v;
    }
    const auto& d = std::get<CaseD>(x);
    const auto& d2 = std::get<CaseD>(y);
    return std::make_tuple(d.slots, -d.sign_p, -d.sign_t) < std::make_tuple(d2.slots, -d2.sign_p, -d2.sign_t);
}

} // namespace detail

/// Every curve of the classification for (E, c1, c2, c3), each one verified
/// in the function field before it is emitted. Canonical parametrisations:
/// (P, [u]P, R) with the P slot before the [u]P slot; (P, [u]P, [v]P) with
/// multiplier 1 in slot 1; ([sqrt(-2)]P, +-P, +-P + (a, 0)) with the P slot
/// before the translated slot (the other ordering is the same curve after
/// P -> P + (a, 0), since (a, 0) is the kernel of [sqrt(-2)]).
inline FamilyList classify(const WeierstrassCurve& E, const RelationCoeffs& coeffs, const CmMode& cm = {})
{
    std::vector<FamilyDescriptor> found;
    for (int s = 0; s < 3; ++s)
        found.emplace_back(CaseA{s});

    const auto units = units_of(E, cm);
    auto verified = [&](const FamilyDescriptor& d) {
        try {
            return verify_family_symbolic(E, coeffs, d);
        } catch (const unsupported_endomorphism&) {
            return false;
        } catch (const field_mismatch&) {
            return false;
        }
    };

    // (P, [u]P, R)
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            int k = 3 - i - j;
            for (const QuadNum& u : units) {
                if (!(coeffs[static_cast<std::size_t>(i)] * u * u + coeffs[static_cast<std::size_t>(j)]).is_zero())
                    continue;
                QuadNum x_r;
                try {
                    x_r = derive_caseB_constant(E, coeffs, {i, j, k}, u);
                } catch (const no_constant_solution&) {
                    continue;
                } catch (const unsupported_endomorphism&) {
                    continue;
                }
                std::vector<CurvePoint> rs = E.lift_x(x_r);
                if (rs.empty()) {
                    found.emplace_back(CaseB{{i, j, k}, u, x_r, std::nullopt});
                } else {
                    for (const auto& R : rs)
                        found.emplace_back(CaseB{{i, j, k}, u, x_r, R});
                }
            }
        }
    }

    // (P, [u]P, [v]P)
    for (const QuadNum& u : units) {
        for (const QuadNum& v : units) {
            if (!(coeffs[0] + coeffs[1] * u.pow(-2) + coeffs[2] * v.pow(-2)).is_zero())
                continue;
            found.emplace_back(CaseC{u, v});
        }
    }

    // ([sqrt(-2)]P, +-P, +-P + (a, 0))
    if (cm.kind != CmMode::Kind::none) {
        if (auto a = detect_Ea_form(E)) {
            for (int i = 0; i < 3; ++i) {
                int j = i == 0 ? 1 : 0;
                int k = 3 - i - j;
                const QuadNum& ci = coeffs[static_cast<std::size_t>(i)];
                if (ci != QuadNum(2) * coeffs[static_cast<std::size_t>(j)] ||
                    ci != QuadNum(2) * coeffs[static_cast<std::size_t>(k)])
                    continue;
                for (int sp : {1, -1})
                    for (int st : {1, -1})
                        found.emplace_back(CaseD{{i, j, k}, sp, st, *a});
            }
        }
    }

    std::vector<FamilyDescriptor> kept;
    for (auto& d : found)
        if (verified(d))
            kept.push_back(std::move(d));
    std::sort(kept.begin(), kept.end(), detail::family_less);

    FamilyList out;
    std::array<int, 4> counters{};
    for (auto& d : kept) {
        char letter = case_letter(d);
        int n = ++counters[d.index()];
        out.families.push_back({std::string(1, letter) + std::to_string(n), std::move(d), true});
    }
    return out;
}

/// First family (in canonical order) containing the triple.
inline const Family* find_family(const WeierstrassCurve& E, const FamilyList& list, const Triple& t)
{
    for (const auto& f : list.families) {
        try {
            if (member(E, f.desc, t))
                return &f;
        } catch (const field_mismatch&) {
            continue;
        }
    }
    return nullptr;
}

} // namespace xrel
