#pragma once

// Seeded generators shared by the property tests.

#include "xrel/curve.hpp"

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

namespace xrel {

inline void PrintTo(const CurvePoint& P, std::ostream* os) { *os << P.str(); }
inline void PrintTo(const QuadNum& q, std::ostream* os) { *os << q.str(); }

} // namespace xrel

namespace xrel::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    long double real(long double lo, long double hi) { return std::uniform_real_distribution<long double>(lo, hi)(rng_); }

    mpq_class rational(long bound = 20)
    {
        long den = integer(1, bound);
        mpq_class q(integer(-bound, bound), den);
        q.canonicalize();
        return q;
    }

    QuadNum quad(std::int64_t d, long bound = 20)
    {
        return d == 1 ? QuadNum(rational(bound)) : QuadNum(rational(bound), rational(bound), d);
    }

    QuadNum nonzero_quad(std::int64_t d, long bound = 20)
    {
        QuadNum q;
        while (q.is_zero())
            q = quad(d, bound);
        return q;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Nonsingular rational curve with a known affine point (x0, y0): pick A, x0,
/// y0 and B at random and solve for C.
struct CurveWithPoint {
    WeierstrassCurve E;
    CurvePoint P;
};

inline CurveWithPoint random_curve_with_point(Gen& g)
{
    while (true) {
        QuadNum A = g.integer(-3, 3), B = g.integer(-5, 5);
        QuadNum x0 = g.integer(-3, 3), y0 = g.integer(1, 4);
        QuadNum C = y0 * y0 - ((x0 + A) * x0 + B) * x0;
        try {
            WeierstrassCurve E(A, B, C);
            return {E, CurvePoint(x0, y0)};
        } catch (const singular_curve&) {
        }
    }
}

/// Affine points [n]P, n = 1..count, skipping the identity.
inline std::vector<CurvePoint> multiples(const WeierstrassCurve& E, const CurvePoint& P, int count)
{
    std::vector<CurvePoint> out;
    CurvePoint Q = P;
    for (int n = 1; n <= count; ++n) {
        if (!Q.is_infinity())
            out.push_back(Q);
        Q = E.add(Q, P);
    }
    return out;
}

} // namespace xrel::testing
