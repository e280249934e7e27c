#pragma once

// Weierstrass p-function numerics in long double: lattice periods from the
// complex AGM, p and p' evaluation, and numeric checks of the family identities
// and pole-set conditions.

#include "xrel/kawamata.hpp"
#include "xrel/numeric.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xrel {

class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class period_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lattice omega1 Z + omega2 Z with Im(omega2/omega1) > 0, reduced so that
/// omega1 is a shortest vector. g2, g3 are the invariants of the lattice.
struct LatticeData {
    cplx omega1, omega2;
    cplx g2, g3;
    /// Embedded A/3 of the source curve, so that x = p(z) - shift.
    cplx shift = 0;
    int precision = 64;

    cplx tau() const { return omega2 / omega1; }
};

namespace analytic_detail {

constexpr long double pi = std::numbers::pi_v<long double>;

/// Square root of z on the branch closest to `ref`.
inline cplx sqrt_near(cplx z, cplx ref)
{
    cplx r = std::sqrt(z);
    return std::abs(r - ref) <= std::abs(r + ref) ? r : -r;
}

/// AGM with the optimal branch at every step (|a - b| <= |a + b|).
inline cplx agm(cplx a, cplx b)
{
    for (int it = 0; it < 100; ++it) {
        if (std::abs(a - b) <= 1e-19L * std::abs(a))
            break;
        cplx an = (a + b) / 2.0L;
        cplx bn = sqrt_near(a * b, an);
        a = an;
        b = bn;
    }
    return (a + b) / 2.0L;
}

inline cplx ipow(cplx z, int n)
{
    cplx r = 1;
    for (int i = 0; i < n; ++i)
        r *= z;
    return r;
}

/// (g2, g3) of the lattice omega1 Z + omega2 Z from the Eisenstein q-series.
inline std::pair<cplx, cplx> invariants_from_periods(cplx omega1, cplx omega2)
{
    cplx tau = omega2 / omega1;
    cplx q = std::exp(cplx(0, 2 * pi) * tau);
    cplx e4 = 1, e6 = 1, qn = 1;
    for (int n = 1; n <= 60; ++n) {
        qn *= q;
        long double s3 = 0, s5 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) {
                s3 += std::pow(static_cast<long double>(d), 3);
                s5 += std::pow(static_cast<long double>(d), 5);
            }
        e4 += 240.0L * s3 * qn;
        e6 -= 504.0L * s5 * qn;
        if (std::abs(qn) * s5 < 1e-30L)
            break;
    }
    const long double p4 = std::pow(pi, 4), p6 = std::pow(pi, 6);
    cplx g2 = (4 * p4 / 3) * e4 / ipow(omega1, 4);
    cplx g3 = (8 * p6 / 27) * e6 / ipow(omega1, 6);
    return {g2, g3};
}

/// Gauss reduction: omega1 shortest, |omega2| minimal, Im(omega2/omega1) > 0.
/// Among equally short choices the one closest to the positive real axis wins.
inline std::pair<cplx, cplx> reduce_basis(cplx w1, cplx w2)
{
    if ((w2 / w1).imag() < 0)
        w2 = -w2;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(w2) < std::abs(w1)) {
            std::swap(w1, w2);
            w1 = -w1;
        }
        long double m = std::round((w2 / w1).real());
        if (m == 0)
            break;
        w2 -= m * w1;
    }
    if ((w2 / w1).imag() < 0)
        w2 = -w2;

    const long double len = std::abs(w1);
    const long double tol = 1e-12L * len;
    cplx best1 = w1, best2 = w2;
    long double best_arg = 10;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            cplx v = static_cast<long double>(a) * w1 + static_cast<long double>(b) * w2;
            if (std::abs(v) > len + tol || std::abs(v) < tol)
                continue;
            long double arg = std::fabs(std::arg(v));
            if (arg >= best_arg - 1e-15L)
                continue;
            // Complete v to a basis with the shortest possible second vector.
            cplx w = 0;
            long double wlen = 0;
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) {
                    if (a * d - b * c != 1 && a * d - b * c != -1)
                        continue;
                    cplx u = static_cast<long double>(c) * w1 + static_cast<long double>(d) * w2;
                    if ((u / v).imag() <= 0)
                        continue;
                    if (w == cplx(0) || std::abs(u) < wlen - tol ||
                        (std::abs(u) <= wlen + tol && std::fabs(std::arg(u / v) - pi / 2) <
                                                          std::fabs(std::arg(w / v) - pi / 2))) {
                        w = u;
                        wlen = std::abs(u);
                    }
                }
            if (w == cplx(0))
                continue;
            best_arg = arg;
            best1 = v;
            best2 = w;
        }
    return {best1, best2};
}

inline long double rel_err(cplx got, cplx want, cplx scale)
{
    return std::abs(got - want) / std::max(1.0L, std::abs(scale));
}

} // namespace analytic_detail

/// Periods of the lattice with g2 = -b, g3 = -c (so that xi = p(z) on
/// y^2 = 4 xi^3 + b xi + c). For each labelling (e1, e2, e3) of the roots of
/// 4x^3 - g2 x - g3 the candidates are
///   pi / M(sqrt(e1 - e3), sqrt(e1 - e2)),  pi i / M(sqrt(e1 - e3), sqrt(e2 - e3))
/// with the square roots of e1 - e2 and e2 - e3 taken on the branch nearest
/// sqrt(e1 - e3) (principal branch there). The first labelling whose reduced
/// basis reproduces (g2, g3) through the Eisenstein series is used.
inline LatticeData periods_from_invariants(cplx g2, cplx g3, int precision = 64)
{
    using namespace analytic_detail;
    cplx disc = g2 * g2 * g2 - 27.0L * g3 * g3;
    if (std::abs(disc) <= 1e-24L * std::max(1.0L, std::pow(std::abs(g2), 3) + 27 * std::norm(g3)))
        throw period_error("singular cubic: g2^3 - 27 g3^2 = 0");
    std::vector<cplx> roots = numeric::polynomial_roots({-g3, -g2, cplx(0), cplx(4)});
    if (roots.size() != 3)
        throw period_error("could not find the roots of 4x^3 - g2 x - g3");

    const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
    long double best_err = 1e300L;
    LatticeData best;
    for (const auto& p : perms) {
        cplx e1 = roots[static_cast<std::size_t>(p[0])], e2 = roots[static_cast<std::size_t>(p[1])],
             e3 = roots[static_cast<std::size_t>(p[2])];
        cplx a = std::sqrt(e1 - e3);
        cplx b = sqrt_near(e1 - e2, a);
        cplx c = sqrt_near(e2 - e3, a);
        cplx w1 = pi / agm(a, b);
        cplx w2 = cplx(0, pi) / agm(a, c);
        if (!std::isfinite(std::abs(w1)) || !std::isfinite(std::abs(w2)))
            continue;
        if (std::fabs((w2 / w1).imag()) < 1e-9L)
            continue;
        auto [r1, r2] = reduce_basis(w1, w2);
        auto [h2, h3] = invariants_from_periods(r1, r2);
        long double err = std::max(rel_err(h2, g2, g2), rel_err(h3, g3, g3));
        if (err < best_err) {
            best_err = err;
            best.omega1 = r1;
            best.omega2 = r2;
        }
        if (err < 1e-14L)
            break;
    }
    if (best_err > 1e-11L)
        throw period_error("AGM periods failed the Eisenstein check (error " + std::to_string(static_cast<double>(best_err)) +
                           ")");
    best.g2 = g2;
    best.g3 = g3;
    best.precision = precision;
    return best;
}

/// Lattice of the depressed form y^2 = 4 xi^3 + b xi + c, embedded at `precision` bits.
inline LatticeData periods(const DepressedForm& f, int precision = 64)
{
    LatticeData L = periods_from_invariants(-embed_complex(f.b, precision), -embed_complex(f.c, precision), precision);
    L.shift = embed_complex(f.shift, precision);
    return L;
}

inline LatticeData periods(const WeierstrassCurve& E, int precision = 64)
{
    return periods(E.depressed_form(), precision);
}

/// Representative of z + Lambda of smallest modulus.
inline cplx reduce(const LatticeData& L, cplx z)
{
    // Solve z = s omega1 + t omega2 over the reals.
    const cplx w1 = L.omega1, w2 = L.omega2;
    long double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    long double s = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
    long double t = (w1.real() * z.imag() - w1.imag() * z.real()) / det;
    cplx r = z - std::round(s) * w1 - std::round(t) * w2;
    cplx best = r;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            cplx c = r - static_cast<long double>(a) * w1 - static_cast<long double>(b) * w2;
            if (std::abs(c) < std::abs(best))
                best = c;
        }
    return best;
}

/// Laurent coefficients: p(z) = z^-2 + sum_{k>=2} c_k z^(2k-2).
inline std::vector<cplx> laurent_coefficients(cplx g2, cplx g3, int terms = 30)
{
    std::vector<cplx> c(static_cast<std::size_t>(terms + 2), cplx(0));
    if (terms >= 1)
        c[2] = g2 / 20.0L;
    if (terms >= 2)
        c[3] = g3 / 28.0L;
    for (int k = 4; k < terms + 2; ++k) {
        cplx s = 0;
        for (int m = 2; m <= k - 2; ++m)
            s += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
        c[static_cast<std::size_t>(k)] = 3.0L * s / static_cast<long double>((2 * k + 1) * (k - 3));
    }
    return c;
}

/// (p(z), p'(z)). Throws pole_error when z is on the lattice.
inline std::pair<cplx, cplx> wp(const LatticeData& L, cplx z, int terms = 30)
{
    cplx w = reduce(L, z);
    const long double len = std::abs(L.omega1);
    if (std::abs(w) <= 1e-12L * len)
        throw pole_error("p(z) has a pole: z is a lattice point");
    int doublings = 0;
    while (std::abs(w) > 0.4L * len) {
        w /= 2.0L;
        ++doublings;
    }
    const auto c = laurent_coefficients(L.g2, L.g3, terms);
    cplx w2 = w * w;
    cplx p = 0, dp = 0, pw = 1;
    // pw = w^(2k-4) at step k
    for (int k = 2; k < terms + 2; ++k) {
        p += c[static_cast<std::size_t>(k)] * pw * w2;
        dp += c[static_cast<std::size_t>(k)] * static_cast<long double>(2 * k - 2) * pw * w;
        pw *= w2;
    }
    p += 1.0L / w2;
    dp += -2.0L / (w2 * w);
    for (int i = 0; i < doublings; ++i) {
        cplx ddp = 6.0L * p * p - L.g2 / 2.0L;
        cplx m = ddp / dp;
        cplx p2 = m * m / 4.0L - 2.0L * p;
        dp = -dp - m * (p2 - p);
        p = p2;
    }
    return {p, dp};
}

/// p'(z)^2 - (4 p(z)^3 - g2 p(z) - g3).
inline cplx ode_residual(const LatticeData& L, cplx z)
{
    auto [p, dp] = wp(L, z);
    return dp * dp - (4.0L * p * p * p - L.g2 * p - L.g3);
}

/// Half period z_T with p(z_T) - A/3 = x(T) for a 2-torsion point T.
inline cplx half_period_of(const LatticeData& L, const CurvePoint& T)
{
    if (T.is_infinity() || !T.y().is_zero())
        throw std::invalid_argument("half_period_of needs a point of order 2");
    const cplx target = embed_complex(T.x(), L.precision) + L.shift;
    const std::array<cplx, 3> halves{L.omega1 / 2.0L, L.omega2 / 2.0L, (L.omega1 + L.omega2) / 2.0L};
    cplx best = halves[0];
    long double err = 1e300L;
    for (const cplx& h : halves) {
        long double e = std::abs(wp(L, h).first - target);
        if (e < err) {
            err = e;
            best = h;
        }
    }
    return best;
}

/// sum_i c_i (p(alpha_i z + beta_i) - A/3) + constant, over the slots whose
/// `alive` flag is set.
struct IdentityCheck {
    std::array<cplx, 3> alphas{1, 1, 1};
    std::array<cplx, 3> betas{0, 0, 0};
    std::array<cplx, 3> coeffs{0, 0, 0};
    std::array<bool, 3> alive{true, true, true};
    cplx constant = 0;
};

/// Multipliers and offsets of a family under the principal embedding of
/// sqrt(d). Only x-coordinates enter, so the sign of each multiplier is
/// immaterial.
inline IdentityCheck identity_check_for(const WeierstrassCurve& E, const LatticeData& L, const RelationCoeffs& coeffs,
                                        const FamilyDescriptor& desc)
{
    IdentityCheck ic;
    for (std::size_t i = 0; i < 3; ++i)
        ic.coeffs[i] = embed_complex(coeffs[i], L.precision);
    if (const auto* b = std::get_if<CaseB>(&desc)) {
        auto k = static_cast<std::size_t>(b->slots[2]);
        ic.alphas[static_cast<std::size_t>(b->slots[1])] = embed_complex(b->u, L.precision);
        ic.alive[k] = false;
        ic.constant = ic.coeffs[k] * embed_complex(b->x_r, L.precision);
    } else if (const auto* c = std::get_if<CaseC>(&desc)) {
        ic.alphas[1] = embed_complex(c->u, L.precision);
        ic.alphas[2] = embed_complex(c->v, L.precision);
    } else if (const auto* d = std::get_if<CaseD>(&desc)) {
        ic.alphas[static_cast<std::size_t>(d->slots[0])] = embed_complex(QuadNum::sqrt_of(-2), L.precision);
        ic.alphas[static_cast<std::size_t>(d->slots[2])] = static_cast<long double>(d->sign_t);
        ic.betas[static_cast<std::size_t>(d->slots[2])] = half_period_of(L, CurvePoint(d->a, QuadNum(0)));
    } else {
        throw std::invalid_argument("families with two coordinates at e_E have no affine identity");
    }
    (void)E;
    return ic;
}

/// Value of the identity at z; throws pole_error near a pole of any slot.
inline cplx identity_value(const LatticeData& L, const IdentityCheck& ic, cplx z)
{
    cplx sum = ic.constant;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!ic.alive[i])
            continue;
        sum += ic.coeffs[i] * (wp(L, ic.alphas[i] * z + ic.betas[i]).first - L.shift);
    }
    return sum;
}

/// Largest |identity| over `samples` random points of the fundamental
/// parallelogram. Points within 0.05 |omega1| of a pole, or with |p| > 1e3,
/// are resampled.
inline long double residual_of(const LatticeData& L, const IdentityCheck& ic, int samples, std::uint64_t seed = 1)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<long double> unit(0, 1);
    const long double guard = 0.05L * std::abs(L.omega1);
    long double worst = 0;
    int done = 0, attempts = 0;
    while (done < samples) {
        if (++attempts > 100 * samples + 1000)
            throw std::runtime_error("could not find sample points away from the poles");
        cplx z = unit(rng) * L.omega1 + unit(rng) * L.omega2;
        bool ok = true;
        for (std::size_t i = 0; i < 3 && ok; ++i) {
            if (!ic.alive[i])
                continue;
            cplx arg = ic.alphas[i] * z + ic.betas[i];
            if (std::abs(reduce(L, arg)) < guard || std::abs(wp(L, arg).first) > 1e3L)
                ok = false;
        }
        if (!ok)
            continue;
        worst = std::max(worst, std::abs(identity_value(L, ic, z)));
        ++done;
    }
    return worst;
}

/// Numeric twin of the function-field verification; 0 for families with two
/// slots at e_E.
inline long double identity_residual(const WeierstrassCurve& E, const RelationCoeffs& coeffs,
                                     const FamilyDescriptor& desc, int samples = 100, std::uint64_t seed = 1,
                                     int precision = 64)
{
    if (std::holds_alternative<CaseA>(desc))
        return 0;
    LatticeData L = periods(E, precision);
    return residual_of(L, identity_check_for(E, L, coeffs, desc), samples, seed);
}

/// Windowed check that each pole of p(alpha_i z + beta_i) is a pole of some
/// other slot. Poles are those z = (lambda - beta_i) / alpha_i with
/// z = s omega1 + t omega2, |s|, |t| <= 1.5.
inline bool pole_inclusion_check(const std::array<cplx, 3>& alphas, const std::array<cplx, 3>& betas,
                                 const LatticeData& L)
{
    const cplx w1 = L.omega1, w2 = L.omega2;
    const long double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    auto coords = [&](cplx z) {
        return std::pair<long double, long double>{(z.real() * w2.imag() - z.imag() * w2.real()) / det,
                                                   (w1.real() * z.imag() - w1.imag() * z.real()) / det};
    };
    const long double window = 1.5L;
    const long double tol = 1e-8L * std::max(1.0L, std::abs(w1));
    for (std::size_t i = 0; i < 3; ++i) {
        if (alphas[i] == cplx(0))
            throw std::invalid_argument("pole_inclusion_check needs nonzero multipliers");
        // Range of lattice coordinates of alpha_i z + beta_i over the window.
        long double smin = 1e300L, smax = -1e300L, tmin = 1e300L, tmax = -1e300L;
        for (long double a : {-window, window})
            for (long double b : {-window, window}) {
                auto [s, t] = coords(alphas[i] * (a * w1 + b * w2) + betas[i]);
                smin = std::min(smin, s);
                smax = std::max(smax, s);
                tmin = std::min(tmin, t);
                tmax = std::max(tmax, t);
            }
        for (long m = static_cast<long>(std::floor(smin)) - 1; m <= static_cast<long>(std::ceil(smax)) + 1; ++m)
            for (long n = static_cast<long>(std::floor(tmin)) - 1; n <= static_cast<long>(std::ceil(tmax)) + 1; ++n) {
                cplx lambda = static_cast<long double>(m) * w1 + static_cast<long double>(n) * w2;
                cplx z = (lambda - betas[i]) / alphas[i];
                auto [s, t] = coords(z);
                if (std::fabs(s) > window + 1e-12L || std::fabs(t) > window + 1e-12L)
                    continue;
                bool covered = false;
                for (std::size_t j = 0; j < 3 && !covered; ++j)
                    if (j != i)
                        covered = std::abs(reduce(L, alphas[j] * z + betas[j])) / std::abs(alphas[j]) < tol;
                if (!covered)
                    return false;
            }
    }
    return true;
}

/// p(z1 + z2) from (p, p') at z1 and z2 by the addition theorem.
inline cplx wp_addition(cplx p1, cplx dp1, cplx p2, cplx dp2)
{
    cplx m = (dp1 - dp2) / (p1 - p2);
    return m * m / 4.0L - p1 - p2;
}

/// "re,im" text for complex values.
inline std::string complex_text(cplx z)
{
    char buf[96];
    // + 0 turns -0 into 0
    std::snprintf(buf, sizeof buf, "%.15Lg,%.15Lg", z.real() + 0.0L, z.imag() + 0.0L);
    return buf;
}

inline cplx parse_complex(const std::string& s)
{
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos)
            return {std::stold(s), 0};
        return {std::stold(s.substr(0, comma)), std::stold(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw parse_error("bad complex number '" + s + "' (expected re,im)");
    }
}

} // namespace xrel
