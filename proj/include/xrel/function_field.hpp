#pragma once

// Function field K(E) = K(X)[Y] / (Y^2 - f(X)) of a Weierstrass curve, and
// rational maps E -> E written as pairs of its elements.

#include "xrel/curve.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace xrel {

using QRatFunc = RationalFunction<QuadNum>;

/// a(X) + b(X) Y, reduced modulo Y^2 = f(X).
class CurveFunction {
public:
    CurveFunction() = default;
    CurveFunction(QPoly f, QRatFunc a, QRatFunc b = QRatFunc()) : f_(std::move(f)), a_(std::move(a)), b_(std::move(b))
    {
    }

    static CurveFunction constant(const WeierstrassCurve& E, QuadNum c) { return {E.cubic(), QRatFunc(std::move(c))}; }
    static CurveFunction x(const WeierstrassCurve& E) { return {E.cubic(), QRatFunc::x()}; }
    static CurveFunction y(const WeierstrassCurve& E) { return {E.cubic(), QRatFunc(), QRatFunc(QuadNum(1))}; }

    const QRatFunc& x_part() const { return a_; }
    const QRatFunc& y_part() const { return b_; }
    const QPoly& modulus() const { return f_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_constant() const { return b_.is_zero() && a_.is_constant(); }

    /// Canonical (n0(X) + n1(X) Y) / d(X) with monic d.
    struct Canonical {
        QPoly n0, n1, d;
    };
    Canonical canonical() const
    {
        QPoly d = a_.den() * QPoly::divmod(b_.den(), gcd(a_.den(), b_.den())).first;
        QPoly n0 = a_.num() * QPoly::divmod(d, a_.den()).first;
        QPoly n1 = b_.num() * QPoly::divmod(d, b_.den()).first;
        return {n0, n1, d};
    }

    friend CurveFunction operator+(const CurveFunction& u, const CurveFunction& v)
    {
        return {pick(u, v), u.a_ + v.a_, u.b_ + v.b_};
    }
    friend CurveFunction operator-(const CurveFunction& u) { return {u.f_, -u.a_, -u.b_}; }
    friend CurveFunction operator-(const CurveFunction& u, const CurveFunction& v) { return u + (-v); }
    friend CurveFunction operator*(const CurveFunction& u, const CurveFunction& v)
    {
        const QPoly& f = pick(u, v);
        QRatFunc fr(f);
        return {f, u.a_ * v.a_ + u.b_ * v.b_ * fr, u.a_ * v.b_ + u.b_ * v.a_};
    }
    friend CurveFunction operator*(const CurveFunction& u, const QuadNum& s)
    {
        QRatFunc sr(s);
        return {u.f_, u.a_ * sr, u.b_ * sr};
    }
    friend CurveFunction operator*(const QuadNum& s, const CurveFunction& u) { return u * s; }

    CurveFunction inverse() const
    {
        // (a + bY)^-1 = (a - bY) / (a^2 - b^2 f)
        QRatFunc norm = a_ * a_ - b_ * b_ * QRatFunc(f_);
        if (norm.is_zero())
            throw std::domain_error("inverting the zero function");
        return {f_, a_ / norm, -b_ / norm};
    }
    friend CurveFunction operator/(const CurveFunction& u, const CurveFunction& v) { return u * v.inverse(); }

    friend bool operator==(const CurveFunction& u, const CurveFunction& v) { return u.a_ == v.a_ && u.b_ == v.b_; }
    friend bool operator!=(const CurveFunction& u, const CurveFunction& v) { return !(u == v); }

    /// Value at an affine point where the function is regular.
    QuadNum operator()(const CurvePoint& P) const { return a_(P.x()) + b_(P.x()) * P.y(); }

    std::string str() const
    {
        auto fmt = [](const QuadNum& q) { return q.str(); };
        Canonical c = canonical();
        std::string num = c.n0.str(fmt);
        if (!c.n1.is_zero())
            num = "(" + num + ") + (" + c.n1.str(fmt) + ")*Y";
        if (c.d.is_constant())
            return num;
        return "(" + num + ") / (" + c.d.str(fmt) + ")";
    }

private:
    static const QPoly& pick(const CurveFunction& u, const CurveFunction& v)
    {
        if (u.f_.is_zero())
            return v.f_;
        if (!v.f_.is_zero() && u.f_ != v.f_)
            throw std::invalid_argument("combining functions on different curves");
        return u.f_;
    }

    QPoly f_;
    QRatFunc a_, b_;
};

/// g(X, Y) with X, Y replaced by the function-field elements xs, ys.
inline CurveFunction substitute(const CurveFunction& g, const CurveFunction& xs, const CurveFunction& ys)
{
    CurveFunction one = CurveFunction(xs.modulus(), QRatFunc(QuadNum(1)));
    auto eval = [&](const QRatFunc& r) {
        return r.num().evaluate_in(xs, one) / r.den().evaluate_in(xs, one);
    };
    CurveFunction out = eval(g.x_part());
    if (!g.y_part().is_zero())
        out = out + eval(g.y_part()) * ys;
    return out;
}

/// A rational map E -> E given by the images of the generic point (X, Y).
struct PointMap {
    CurveFunction x, y;
};

namespace maps {

inline PointMap identity(const WeierstrassCurve& E) { return {CurveFunction::x(E), CurveFunction::y(E)}; }

inline PointMap negate(const WeierstrassCurve& E) { return {CurveFunction::x(E), -CurveFunction::y(E)}; }

/// outer o inner.
inline PointMap compose(const PointMap& outer, const PointMap& inner)
{
    return {substitute(outer.x, inner.x, inner.y), substitute(outer.y, inner.x, inner.y)};
}

/// Pointwise group-law sum of two maps; nullopt when the sum is constantly e_E.
inline std::optional<PointMap> add(const WeierstrassCurve& E, const PointMap& m1, const PointMap& m2)
{
    CurveFunction lambda;
    if (m1.x == m2.x) {
        if (m1.y == -m2.y)
            return std::nullopt;
        CurveFunction three = CurveFunction::constant(E, QuadNum(3));
        CurveFunction twoA = CurveFunction::constant(E, QuadNum(2) * E.A());
        CurveFunction B = CurveFunction::constant(E, E.B());
        lambda = (three * m1.x * m1.x + twoA * m1.x + B) / (QuadNum(2) * m1.y);
    } else {
        lambda = (m2.y - m1.y) / (m2.x - m1.x);
    }
    CurveFunction A = CurveFunction::constant(E, E.A());
    CurveFunction x3 = lambda * lambda - A - m1.x - m2.x;
    CurveFunction y3 = lambda * (m1.x - x3) - m1.y;
    return PointMap{x3, y3};
}

/// P -> P + T for a fixed point T.
inline PointMap translate(const WeierstrassCurve& E, const CurvePoint& T)
{
    E.require(T);
    PointMap id = identity(E);
    if (T.is_infinity())
        return id;
    PointMap constant{CurveFunction::constant(E, T.x()), CurveFunction::constant(E, T.y())};
    auto sum = add(E, id, constant);
    return *sum;
}

/// Multiplication by n as a rational map; nullopt for n = 0.
inline std::optional<PointMap> multiply(const WeierstrassCurve& E, long n)
{
    if (n == 0)
        return std::nullopt;
    PointMap base = n < 0 ? negate(E) : identity(E);
    unsigned long k = n < 0 ? 0UL - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    std::optional<PointMap> acc;
    while (k) {
        if (k & 1UL)
            acc = acc ? add(E, *acc, base) : std::optional<PointMap>(base);
        k >>= 1;
        if (k) {
            auto dbl = add(E, base, base);
            if (!dbl)
                throw std::logic_error("doubling the generic point gave e_E");
            base = *dbl;
        }
    }
    return acc;
}

} // namespace maps

/// Coefficient triple of the linear x-relation; all entries nonzero.
struct RelationCoeffs {
    std::array<QuadNum, 3> c;

    RelationCoeffs(QuadNum c1, QuadNum c2, QuadNum c3) : c{std::move(c1), std::move(c2), std::move(c3)}
    {
        for (const auto& v : c)
            if (v.is_zero())
                throw std::invalid_argument("relation coefficients must be nonzero");
    }

    const QuadNum& operator[](std::size_t i) const { return c[i]; }
};

/// True iff c1 f1 + c2 f2 + c3 f3 vanishes identically in the function field.
inline bool identity_check(const RelationCoeffs& coeffs, const std::array<CurveFunction, 3>& terms)
{
    CurveFunction sum = terms[0] * coeffs[0] + terms[1] * coeffs[1] + terms[2] * coeffs[2];
    return sum.is_zero();
}

} // namespace xrel
