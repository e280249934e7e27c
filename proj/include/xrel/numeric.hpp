#pragma once

// Small floating-point helpers shared by the exact and analytic layers.

#include "xrel/exactnum.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace xrel::numeric {

/// All complex roots of sum coeffs[i] z^i (Durand-Kerner, then Newton polish).
inline std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs)
{
    while (!coeffs.empty() && coeffs.back() == cplx(0))
        coeffs.pop_back();
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1)
        return {};
    const cplx lead = coeffs.back();
    for (auto& c : coeffs)
        c /= lead;

    auto eval = [&](cplx z) {
        cplx acc = 0;
        for (int i = n; i >= 0; --i)
            acc = acc * z + coeffs[static_cast<std::size_t>(i)];
        return acc;
    };
    auto deriv = [&](cplx z) {
        cplx acc = 0;
        for (int i = n; i >= 1; --i)
            acc = acc * z + coeffs[static_cast<std::size_t>(i)] * static_cast<long double>(i);
        return acc;
    };

    long double radius = 1;
    for (int i = 0; i < n; ++i)
        radius = std::max(radius, 1 + std::abs(coeffs[static_cast<std::size_t>(i)]));

    std::vector<cplx> z(static_cast<std::size_t>(n));
    const cplx seed(0.4L, 0.9L);
    for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(i)] = std::pow(seed, static_cast<long double>(i)) * (radius / 2);

    for (int iter = 0; iter < 500; ++iter) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            cplx denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            if (denom == cplx(0))
                denom = cplx(1e-30L);
            cplx step = eval(z[static_cast<std::size_t>(i)]) / denom;
            z[static_cast<std::size_t>(i)] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-30L)
            break;
    }
    for (auto& r : z) {
        for (int k = 0; k < 4; ++k) {
            cplx d = deriv(r);
            if (d == cplx(0))
                break;
            r -= eval(r) / d;
        }
    }
    return z;
}

/// Best rational approximation of v with denominator <= max_den, accepted only
/// when it matches v to about 1e-14 relative.
inline std::optional<mpq_class> rationalize(long double v, long max_den = 1000000000L)
{
    if (!std::isfinite(v))
        return std::nullopt;
    const long double tol = 1e-14L * std::max(1.0L, std::fabs(v));
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    long double x = v;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(x);
        mpz_class az;
        mpz_set_d(az.get_mpz_t(), static_cast<double>(a));
        if (std::fabs(a) >= 9e15L)
            return std::nullopt;
        mpz_class h2 = az * h1 + h0;
        mpz_class k2 = az * k1 + k0;
        if (k2 > max_den)
            break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpq_class approx(h1, k1);
        approx.canonicalize();
        if (std::fabs(static_cast<long double>(approx.get_d()) - v) <= tol)
            return approx;
        long double frac = x - a;
        if (frac < 1e-30L)
            break;
        x = 1 / frac;
    }
    return std::nullopt;
}

} // namespace xrel::numeric
