#pragma once

// Endomorphism catalog: units, norm equations in imaginary quadratic orders,
// the E_a family with CM by Z[sqrt(-2)], and explicit endomorphism actions.

#include "xrel/function_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xrel {

class unsupported_endomorphism : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A complex multiplier and its degree (= norm).
struct EndoDescriptor {
    QuadNum element;
    mpz_class degree;

    explicit EndoDescriptor(QuadNum e) : element(std::move(e))
    {
        mpq_class n = element.norm();
        if (n.get_den() != 1)
            throw std::invalid_argument("endomorphism element " + element.str() + " is not integral");
        degree = n.get_num();
    }
};

/// How CM data is obtained: the built-in catalog, none at all, or declared by discriminant.
struct CmMode {
    enum class Kind { automatic, none, declared };
    Kind kind = Kind::automatic;
    std::int64_t disc = 0;

    static CmMode parse(const std::string& s)
    {
        if (s == "auto")
            return {};
        if (s == "none")
            return {Kind::none, 0};
        if (s.rfind("d=", 0) == 0) {
            std::int64_t d = 0;
            try {
                d = std::stoll(s.substr(2));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad --cm value '" + s + "'");
            }
            if (d >= 0 || !detail::is_squarefree(d))
                throw std::invalid_argument("declared CM discriminant must be negative and squarefree");
            return {Kind::declared, d};
        }
        throw std::invalid_argument("bad --cm value '" + s + "' (expected auto, none or d=<disc>)");
    }

    std::string str() const
    {
        switch (kind) {
        case Kind::automatic:
            return "auto";
        case Kind::none:
            return "none";
        case Kind::declared:
            return "d=" + std::to_string(disc);
        }
        return "auto";
    }
};

/// Elements of the maximal order of Q(sqrt d), d < 0 squarefree, of norm n.
inline std::vector<QuadNum> solve_norm(std::int64_t d, long n)
{
    if (d >= 0 || !detail::is_squarefree(d))
        throw std::invalid_argument("solve_norm needs a negative squarefree d");
    if (n < 1)
        throw std::invalid_argument("solve_norm needs n >= 1");
    const std::int64_t k = -d;
    std::vector<QuadNum> out;
    if (((d % 4) + 4) % 4 == 1) {
        // (a + b sqrt d) / 2 with a = b mod 2: a^2 + k b^2 = 4n
        const long target = 4 * n;
        for (long b = 0; k * b * b <= target; ++b) {
            long rest = target - static_cast<long>(k) * b * b;
            long a = std::lround(std::sqrt(static_cast<double>(rest)));
            if (a * a != rest || ((a - b) % 2) != 0)
                continue;
            for (long sa : {a, -a})
                for (long sb : {b, -b})
                    out.emplace_back(mpq_class(sa, 2), mpq_class(sb, 2), d);
        }
    } else {
        for (long b = 0; k * b * b <= n; ++b) {
            long rest = n - static_cast<long>(k) * b * b;
            long a = std::lround(std::sqrt(static_cast<double>(rest)));
            if (a * a != rest)
                continue;
            for (long sa : {a, -a})
                for (long sb : {b, -b})
                    out.emplace_back(mpq_class(sa), mpq_class(sb), d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline QuadNum zeta3() { return QuadNum(mpq_class(-1, 2), mpq_class(1, 2), -3); }

/// Unit group of End(E) from the catalog: +-1, +-i for j = 1728, sixth roots of unity for j = 0.
inline std::vector<QuadNum> units_of(const WeierstrassCurve& E, const CmMode& mode = {})
{
    std::int64_t d = 0;
    if (mode.kind == CmMode::Kind::declared) {
        d = mode.disc;
    } else if (mode.kind == CmMode::Kind::automatic) {
        DepressedForm f = E.depressed_form();
        if (f.q.is_zero())
            d = -1;
        else if (f.p.is_zero())
            d = -3;
    }
    if (d == 0)
        return {QuadNum(-1), QuadNum(1)};
    return solve_norm(d, 1);
}

/// a when the curve is y^2 = x^3 + a x^2 - 3a^2 x + a^3 with a != 0.
inline std::optional<QuadNum> detect_Ea_form(const WeierstrassCurve& E)
{
    const QuadNum& a = E.A();
    if (a.is_zero())
        return std::nullopt;
    if (E.B() == QuadNum(-3) * a * a && E.C() == a * a * a)
        return a;
    return std::nullopt;
}

inline bool is_root_of_unity(const QuadNum& u)
{
    return u.pow(12) == QuadNum(1);
}

namespace detail {

/// Checks that xi -> u^-2 xi, y -> u^-3 y preserves y^2 = xi^3 + p xi + q.
inline void require_unit_action(const WeierstrassCurve& E, const QuadNum& u)
{
    if (!is_root_of_unity(u))
        throw unsupported_endomorphism(u.str() + " is not a unit of an imaginary quadratic order");
    DepressedForm f = E.depressed_form();
    QuadNum um2 = u.pow(-2), um6 = u.pow(-6);
    if (!(f.p * (um6 - um2)).is_zero() || !(f.q * (um6 - QuadNum(1))).is_zero())
        throw unsupported_endomorphism("[" + u.str() + "] is not an endomorphism of " + E.str());
}

} // namespace detail

/// [u] on any curve whose depressed form it preserves (x_dep -> u^-2 x_dep, y -> u^-3 y).
inline PointMap unit_map(const WeierstrassCurve& E, const QuadNum& u)
{
    detail::require_unit_action(E, u);
    QuadNum s = E.A() / QuadNum(3);
    QuadNum um2 = u.pow(-2);
    CurveFunction X = CurveFunction::x(E);
    CurveFunction x = (X + CurveFunction::constant(E, s)) * um2 - CurveFunction::constant(E, s);
    CurveFunction y = CurveFunction::y(E) * u.pow(-3);
    return {x, y};
}

/// [sqrt(-2)] on E_a:
///   x -> -(X + a + 2a^2/(X - a)) / 2,  y -> -Y (1 - 2a^2/(X - a)^2) / (2 sqrt(-2)).
inline PointMap sqrt_minus2_map(const WeierstrassCurve& E)
{
    auto a = detect_Ea_form(E);
    if (!a)
        throw unsupported_endomorphism("[sqrt(-2)] is only catalogued for y^2 = x^3 + ax^2 - 3a^2x + a^3");
    QPoly Xma(std::vector<QuadNum>{-*a, QuadNum(1)});
    QRatFunc frac(QPoly(QuadNum(2) * *a * *a), Xma);
    QRatFunc xr = (QRatFunc::x() + QRatFunc(*a) + frac) * QRatFunc(QuadNum(mpq_class(-1, 2)));
    QRatFunc frac2(QPoly(QuadNum(2) * *a * *a), Xma * Xma);
    QuadNum k = QuadNum(-1) / (QuadNum(2) * QuadNum::sqrt_of(-2));
    QRatFunc yr = (QRatFunc(QuadNum(1)) - frac2) * QRatFunc(k);
    return {CurveFunction(E.cubic(), xr), CurveFunction(E.cubic(), QRatFunc(), yr)};
}

namespace detail {

inline CurvePoint apply_unit(const WeierstrassCurve& E, const QuadNum& u, const CurvePoint& P)
{
    require_unit_action(E, u);
    if (P.is_infinity())
        return P;
    QuadNum s = E.A() / QuadNum(3);
    return {u.pow(-2) * (P.x() + s) - s, u.pow(-3) * P.y()};
}

inline CurvePoint apply_sqrt_minus2(const WeierstrassCurve& E, const CurvePoint& P)
{
    auto a = detect_Ea_form(E);
    if (!a)
        throw unsupported_endomorphism("[sqrt(-2)] is only catalogued for y^2 = x^3 + ax^2 - 3a^2x + a^3");
    if (P.is_infinity() || P.x() == *a)
        return CurvePoint::infinity();
    QuadNum t = P.x() - *a;
    QuadNum two_a2 = QuadNum(2) * *a * *a;
    QuadNum x = QuadNum(mpq_class(-1, 2)) * (P.x() + *a + two_a2 / t);
    QuadNum k = QuadNum(-1) / (QuadNum(2) * QuadNum::sqrt_of(-2));
    QuadNum y = k * P.y() * (QuadNum(1) - two_a2 / (t * t));
    return {x, y};
}

inline long to_long(const mpq_class& q)
{
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw unsupported_endomorphism("endomorphism coordinates must be small integers");
    return q.get_num().get_si();
}

} // namespace detail

/// Image of P under the endomorphism e. Supported: integers on any curve,
/// Z[i] when j = 1728, Z[zeta_3] when j = 0, Z[sqrt(-2)] on E_a curves.
inline CurvePoint endo_apply(const WeierstrassCurve& E, const EndoDescriptor& e, const CurvePoint& P)
{
    E.require(P);
    const QuadNum& z = e.element;
    if (z.is_rational())
        return E.scalar_mul(detail::to_long(z.rational_part()), P);
    const mpq_class& p = z.rational_part();
    const mpq_class& q = z.irrational_part();
    CurvePoint image;
    long m = 0, n = 0;
    switch (z.disc()) {
    case -1:
        m = detail::to_long(p);
        n = detail::to_long(q);
        image = detail::apply_unit(E, QuadNum::sqrt_of(-1), P);
        break;
    case -3:
        // p + q sqrt(-3) = (p + q) + 2q zeta_3
        m = detail::to_long(p + q);
        n = detail::to_long(2 * q);
        image = detail::apply_unit(E, zeta3(), P);
        break;
    case -2:
        m = detail::to_long(p);
        n = detail::to_long(q);
        image = detail::apply_sqrt_minus2(E, P);
        break;
    default:
        throw unsupported_endomorphism("no catalogued action for " + z.str());
    }
    return E.add_unchecked(E.scalar_mul(m, P), E.scalar_mul(n, image));
}

/// Named rational maps E -> E whose x-coordinates the classifier composes.
struct Transform {
    enum class Kind { identity, negate_point, unit_endo, sqrtminus2_endo, translate_by };
    Kind kind = Kind::identity;
    QuadNum unit;
    CurvePoint point;

    static Transform identity() { return {}; }
    static Transform negate_point() { return {Kind::negate_point, {}, {}}; }
    static Transform unit_endo(QuadNum u) { return {Kind::unit_endo, std::move(u), {}}; }
    static Transform sqrtminus2_endo() { return {Kind::sqrtminus2_endo, {}, {}}; }
    static Transform translate_by(CurvePoint T) { return {Kind::translate_by, {}, std::move(T)}; }
};

inline PointMap point_map(const WeierstrassCurve& E, const Transform& t)
{
    switch (t.kind) {
    case Transform::Kind::identity:
        return maps::identity(E);
    case Transform::Kind::negate_point:
        return maps::negate(E);
    case Transform::Kind::unit_endo:
        if (t.unit == QuadNum(1))
            return maps::identity(E);
        if (t.unit == QuadNum(-1))
            return maps::negate(E);
        return unit_map(E, t.unit);
    case Transform::Kind::sqrtminus2_endo:
        return sqrt_minus2_map(E);
    case Transform::Kind::translate_by:
        return maps::translate(E, t.point);
    }
    throw std::logic_error("unknown transform");
}

/// x o t as an element of the function field.
inline CurveFunction x_function_compose(const WeierstrassCurve& E, const Transform& t)
{
    return point_map(E, t).x;
}

} // namespace xrel
