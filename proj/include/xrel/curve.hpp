#pragma once

// Curves y^2 = x^3 + A x^2 + B x + C with exact affine-or-infinity points.

#include "xrel/exactnum.hpp"
#include "xrel/numeric.hpp"
#include "xrel/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xrel {

using QPoly = Polynomial<QuadNum>;

class singular_curve : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class not_on_curve : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CurvePoint {
public:
    CurvePoint() = default;
    CurvePoint(QuadNum x, QuadNum y) : xy_(std::in_place, std::move(x), std::move(y)) {}

    static CurvePoint infinity() { return {}; }

    bool is_infinity() const { return !xy_.has_value(); }
    const QuadNum& x() const { return checked().first; }
    const QuadNum& y() const { return checked().second; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return a.xy_ == b.xy_; }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    /// Infinity first, then structural order on (x, y).
    friend bool operator<(const CurvePoint& a, const CurvePoint& b)
    {
        if (a.is_infinity() || b.is_infinity())
            return a.is_infinity() && !b.is_infinity();
        if (a.x() != b.x())
            return a.x() < b.x();
        return a.y() < b.y();
    }

    /// "inf" or "[x, y]".
    std::string str() const { return is_infinity() ? "inf" : "[" + x().str() + ", " + y().str() + "]"; }

private:
    const std::pair<QuadNum, QuadNum>& checked() const
    {
        if (!xy_)
            throw std::domain_error("the point at infinity has no affine coordinates");
        return *xy_;
    }

    std::optional<std::pair<QuadNum, QuadNum>> xy_;
};

/// y^2 = xi^3 + p xi + q with x = xi - shift; b = 4p, c = 4q give y^2 = 4 xi^3 + b xi + c after y -> 2y.
struct DepressedForm {
    QuadNum p, q;
    QuadNum b, c;
    QuadNum shift;
};

namespace detail {

inline std::int64_t infer_field(std::initializer_list<const QuadNum*> values)
{
    std::int64_t d = 1;
    for (const QuadNum* v : values) {
        if (v->is_rational())
            continue;
        if (d != 1 && d != v->disc())
            throw field_mismatch("curve coefficients live in different quadratic fields");
        d = v->disc();
    }
    return d;
}

inline bool all_rational(const QPoly& f)
{
    return std::all_of(f.coeffs().begin(), f.coeffs().end(), [](const QuadNum& c) { return c.is_rational(); });
}

/// Rational roots of a polynomial with rational coefficients. Exact: any root
/// r makes L*r an integer root of a monic integer polynomial, and integer
/// roots are located numerically then confirmed by exact evaluation.
inline std::vector<QuadNum> rational_roots(const QPoly& f)
{
    std::vector<QuadNum> out;
    if (f.degree() < 1)
        return out;
    QPoly g = f.monic();
    const int n = g.degree();
    mpz_class L = 1;
    for (const QuadNum& c : g.coeffs())
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.rational_part().get_den_mpz_t());
    // h(y) = L^n g(y / L) is monic with integer coefficients.
    std::vector<mpz_class> h(static_cast<std::size_t>(n + 1));
    mpz_class Lpow = 1;
    for (int i = n; i >= 0; --i) {
        mpq_class v = g[static_cast<std::size_t>(i)].rational_part() * mpq_class(Lpow);
        h[static_cast<std::size_t>(i)] = v.get_num();
        Lpow *= L;
    }
    std::vector<cplx> hc;
    for (const auto& c : h)
        hc.emplace_back(static_cast<long double>(c.get_d()), 0.0L);
    auto hval = [&](const mpz_class& y) {
        mpz_class acc = 0;
        for (int i = n; i >= 0; --i)
            acc = acc * y + h[static_cast<std::size_t>(i)];
        return acc;
    };
    std::vector<mpz_class> found;
    if (h[0] == 0)
        found.push_back(0);
    for (const cplx& z : numeric::polynomial_roots(hc)) {
        if (std::fabs(z.imag()) > 0.5L + 1e-6L * std::fabs(z.real()))
            continue;
        mpz_class base;
        mpz_set_d(base.get_mpz_t(), static_cast<double>(std::round(z.real())));
        for (int off = -1; off <= 1; ++off) {
            mpz_class y = base + off;
            if (hval(y) == 0 && std::find(found.begin(), found.end(), y) == found.end())
                found.push_back(y);
        }
    }
    for (const auto& y : found)
        out.emplace_back(mpq_class(y, L));
    for (auto& r : out)
        r = QuadNum(mpq_class(r.rational_part()));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<QuadNum> quadratic_roots(const QPoly& f, std::int64_t d)
{
    const QuadNum& a = f[2];
    const QuadNum& b = f[1];
    const QuadNum& c = f[0];
    auto s = sqrt_in_field(b * b - QuadNum(4) * a * c, d);
    if (!s)
        return {};
    std::vector<QuadNum> out{(-b + *s) / (QuadNum(2) * a), (-b - *s) / (QuadNum(2) * a)};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Candidate roots in Q(sqrt d) recognised from numerical roots; callers verify.
inline std::vector<QuadNum> recognised_roots(const QPoly& f, std::int64_t d)
{
    std::vector<cplx> c1, c2;
    for (const QuadNum& c : f.coeffs()) {
        c1.push_back(embed_complex(c));
        c2.push_back(embed_conjugate(c));
    }
    auto r1 = numeric::polynomial_roots(c1);
    auto r2 = numeric::polynomial_roots(c2);
    std::vector<QuadNum> cands;
    auto push = [&](long double s, long double t) {
        auto sq = numeric::rationalize(s);
        auto tq = std::fabs(t) < 1e-15L ? std::optional<mpq_class>(0) : numeric::rationalize(t);
        if (sq && tq)
            cands.emplace_back(*sq, *tq, d == 1 ? 2 : d);
    };
    for (const cplx& z : r1) {
        if (d == 1) {
            if (std::fabs(z.imag()) < 1e-12L * std::max(1.0L, std::abs(z)))
                push(z.real(), 0);
        } else if (d < 0) {
            push(z.real(), z.imag() / std::sqrt(static_cast<long double>(-d)));
        } else {
            for (const cplx& w : r2)
                push((z.real() + w.real()) / 2, (z.real() - w.real()) / (2 * std::sqrt(static_cast<long double>(d))));
        }
    }
    return cands;
}

} // namespace detail

/// Roots of f that lie in Q(sqrt d) (d = 1 means Q), sorted and distinct.
inline std::vector<QuadNum> roots_in_field(QPoly f, std::int64_t d)
{
    std::vector<QuadNum> roots;
    auto deflate = [&](const QuadNum& r) {
        f = QPoly::divmod(f, QPoly(std::vector<QuadNum>{-r, QuadNum(1)})).first;
        roots.push_back(r);
    };
    if (detail::all_rational(f)) {
        for (const QuadNum& r : detail::rational_roots(f)) {
            while (f.degree() >= 1 && f(r).is_zero())
                deflate(r);
        }
    } else {
        for (const QuadNum& r : detail::recognised_roots(f, d)) {
            while (f.degree() >= 1 && f(r).is_zero())
                deflate(r);
        }
    }
    if (f.degree() == 1)
        roots.push_back(-f[0] / f[1]);
    else if (f.degree() == 2)
        for (const QuadNum& r : detail::quadratic_roots(f, d))
            roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

class WeierstrassCurve {
public:
    /// Working field Q(sqrt field_d); 0 means "infer from the coefficients".
    WeierstrassCurve(QuadNum A, QuadNum B, QuadNum C, std::int64_t field_d = 0)
        : A_(std::move(A)), B_(std::move(B)), C_(std::move(C))
    {
        std::int64_t inferred = detail::infer_field({&A_, &B_, &C_});
        if (field_d == 0) {
            field_ = inferred;
        } else {
            if (!detail::is_squarefree(field_d))
                throw std::invalid_argument("field discriminant must be squarefree");
            if (inferred != 1 && inferred != field_d)
                throw field_mismatch("curve coefficients are not in Q(sqrt(" + std::to_string(field_d) + "))");
            field_ = field_d;
        }
        if (discriminant().is_zero())
            throw singular_curve("singular curve: x^3 + Ax^2 + Bx + C has a repeated root");
    }

    const QuadNum& A() const { return A_; }
    const QuadNum& B() const { return B_; }
    const QuadNum& C() const { return C_; }
    std::int64_t field() const { return field_; }

    QPoly cubic() const { return QPoly(std::vector<QuadNum>{C_, B_, A_, QuadNum(1)}); }
    QuadNum rhs(const QuadNum& x) const { return ((x + A_) * x + B_) * x + C_; }

    /// Discriminant of the cubic x^3 + A x^2 + B x + C.
    QuadNum discriminant() const
    {
        const QuadNum &a = A_, &b = B_, &c = C_;
        return a * a * b * b - QuadNum(4) * b * b * b - QuadNum(4) * a * a * a * c - QuadNum(27) * c * c +
               QuadNum(18) * a * b * c;
    }

    bool contains(const CurvePoint& P) const { return P.is_infinity() || P.y() * P.y() == rhs(P.x()); }

    void require(const CurvePoint& P) const
    {
        if (!contains(P))
            throw not_on_curve("point " + P.str() + " is not on " + str());
    }

    CurvePoint negate(const CurvePoint& P) const
    {
        if (P.is_infinity())
            return P;
        return {P.x(), -P.y()};
    }

    /// Chord-tangent group law; throws if either point is off the curve.
    CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const
    {
        require(P);
        require(Q);
        return add_unchecked(P, Q);
    }

    CurvePoint add_unchecked(const CurvePoint& P, const CurvePoint& Q) const
    {
        if (P.is_infinity())
            return Q;
        if (Q.is_infinity())
            return P;
        QuadNum lambda;
        if (P.x() == Q.x()) {
            if (P.y() == -Q.y())
                return CurvePoint::infinity();
            lambda = (QuadNum(3) * P.x() * P.x() + QuadNum(2) * A_ * P.x() + B_) / (QuadNum(2) * P.y());
        } else {
            lambda = (Q.y() - P.y()) / (Q.x() - P.x());
        }
        QuadNum x3 = lambda * lambda - A_ - P.x() - Q.x();
        QuadNum y3 = lambda * (P.x() - x3) - P.y();
        return {std::move(x3), std::move(y3)};
    }

    CurvePoint scalar_mul(long n, const CurvePoint& P) const
    {
        require(P);
        CurvePoint base = n < 0 ? negate(P) : P;
        unsigned long k = n < 0 ? 0UL - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
        CurvePoint acc;
        while (k) {
            if (k & 1UL)
                acc = add_unchecked(acc, base);
            base = add_unchecked(base, base);
            k >>= 1;
        }
        return acc;
    }

    DepressedForm depressed_form() const
    {
        DepressedForm f;
        f.shift = A_ / QuadNum(3);
        f.p = B_ - A_ * A_ / QuadNum(3);
        f.q = C_ - A_ * B_ / QuadNum(3) + QuadNum(2) * A_ * A_ * A_ / QuadNum(27);
        f.b = QuadNum(4) * f.p;
        f.c = QuadNum(4) * f.q;
        // x = xi - A/3 must turn the cubic into xi^3 + p xi + q.
        QPoly sub(std::vector<QuadNum>{-f.shift, QuadNum(1)});
        QPoly lhs = cubic().evaluate_in(sub, QPoly(QuadNum(1)));
        QPoly expect(std::vector<QuadNum>{f.q, f.p, QuadNum(0), QuadNum(1)});
        if (lhs != expect)
            throw std::logic_error("depressed form substitution check failed");
        return f;
    }

    QuadNum j_invariant() const
    {
        DepressedForm f = depressed_form();
        QuadNum p3 = QuadNum(4) * f.p * f.p * f.p;
        return QuadNum(1728) * p3 / (p3 + QuadNum(27) * f.q * f.q);
    }

    /// Points (e, 0) for roots e of the cubic inside the working field.
    std::vector<CurvePoint> two_torsion() const
    {
        std::vector<CurvePoint> out;
        for (const QuadNum& e : roots_in_field(cubic(), field_))
            out.emplace_back(e, QuadNum(0));
        return out;
    }

    /// Points with the given x-coordinate over the working field (0, 1 or 2 of them).
    std::vector<CurvePoint> lift_x(const QuadNum& x) const
    {
        QuadNum r = rhs(x);
        auto y = sqrt_in_field(r, field_);
        if (!y)
            return {};
        if (y->is_zero())
            return {CurvePoint(x, QuadNum(0))};
        std::vector<CurvePoint> out{CurvePoint(x, *y), CurvePoint(x, -*y)};
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string str() const { return "y^2 = x^3 + (" + A_.str() + ")x^2 + (" + B_.str() + ")x + (" + C_.str() + ")"; }

private:
    QuadNum A_, B_, C_;
    std::int64_t field_ = 1;
};

} // namespace xrel
