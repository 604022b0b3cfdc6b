//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernel.cpp
//!
//! Image form of the series S = sum_n K0(n r/k) cos(n x3/k):
//!
//!   S = (gamma + ln(r / 4 pi k)) / 2 + (pi k / 2) [1/|x| + sum_m P_m(x)]
//!   P_m = 1/|x - m L e3| + 1/|x + m L e3| - 2/(m L),   L = 2 pi k.
//!
//! Pairs beyond M are summed with the axial multipole expansion
//! sum_{m>M} P_m = sum_{l even >= 2} 2 R_l(x) zeta(l+1, M+1) / L^{l+1},
//! with R_l = |x|^l P_l(x3/|x|) the zonal solid harmonics.
//---------------------------------------------------------------------------//
#include "helix/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "helix/bessel.hpp"
#include "helix/error.hpp"

namespace helix
{
namespace
{
//---------------------------------------------------------------------------//
using std::numbers::pi;

constexpr int max_pairs = 64;
constexpr int max_order = 160;
// Largest |x| / ((M+1) L) for which the multipole tail is used
constexpr double multipole_ratio = 0.5;

//---------------------------------------------------------------------------//
/*!
 * zeta(l+1, M+1) for M < max_pairs and l <= max_order.
 */
struct ZetaTable
{
    std::array<std::array<double, max_order + 1>, max_pairs> v{};
    std::array<double, max_order + 2> inv{};

    ZetaTable()
    {
        for (int l = 1; l <= max_order + 1; ++l)
            inv[l] = 1.0 / l;
        for (int m = 0; m < max_pairs; ++m)
        {
            for (int l = 1; l <= max_order; ++l)
                v[m][l] = hurwitz_zeta(l + 1, m + 1);
        }
    }
};

ZetaTable const& zeta_table()
{
    static ZetaTable const table;
    return table;
}

//---------------------------------------------------------------------------//
//! Gaussian blob factor erf(s) - 2 s exp(-s^2) / sqrt(pi)
double blob_factor(double s)
{
    return std::erf(s) - 2 / std::sqrt(pi) * s * std::exp(-s * s);
}

//---------------------------------------------------------------------------//
//! Potential and gradient of the bracketed image sum
struct ImageSum
{
    double value = 0;
    Vec3 grad;
};

//---------------------------------------------------------------------------//
/*!
 * Multipole closure of the pairs m > M.
 *
 * grad~ R_l = x~ T_l and d3 R_l = l R_{l-1}.
 */
void add_multipole_tail(Vec3 const& x, int pairs, double period, ImageSum& out)
{
    auto const& zeta = zeta_table().v[pairs];
    auto const& inv = zeta_table().inv;
    double const rho2 = dot(x, x);
    double const inv_l = 1 / period;
    // Terms are compared against the Coulomb scale 1/|x|
    double const floor = 1 / std::sqrt(rho2);
    double r_prev = 1;  // R_0
    double r_cur = x.z;  // R_1
    double t_prev = 0;  // T_0
    double t_cur = 0;  // T_1
    double scale = inv_l * inv_l;  // 1 / L^{l+1} at l = 1
    double value = 0;
    double absum = 0;
    double gt = 0;
    double g3 = 0;
    int quiet = 0;
    for (int l = 1; l < max_order; ++l)
    {
        double const r_next
            = ((2 * l + 1) * x.z * r_cur - l * rho2 * r_prev) * inv[l + 1];
        double const t_next
            = ((2 * l + 1) * x.z * t_cur - l * (2 * r_prev + rho2 * t_prev))
              * inv[l + 1];
        scale *= inv_l;
        int const order = l + 1;
        if (order % 2 == 0)
        {
            double const c = 2 * zeta[order] * scale;
            double const dv = c * r_next;
            value += dv;
            gt += c * t_next;
            g3 += c * order * r_cur;
            double const mag = std::fabs(c)
                               * (std::fabs(r_next) + std::fabs(r_cur)
                                  + std::fabs(t_next) * rho2);
            absum += mag;
            if (mag <= 1e-17 * (absum + floor))
            {
                if (++quiet == 2)
                    break;
            }
            else
            {
                quiet = 0;
            }
        }
        r_prev = r_cur;
        r_cur = r_next;
        t_prev = t_cur;
        t_cur = t_next;
    }
    out.value += value;
    out.grad += Vec3{x.x * gt, x.y * gt, g3};
}

//---------------------------------------------------------------------------//
/*!
 * Comparison-integral closure of the pairs m > M with the midpoint
 * Euler-Maclaurin correction f'(a)/24, a = M + 1/2.
 */
void add_integral_tail(Vec3 const& x, int pairs, double period, ImageSum& out)
{
    double const a = pairs + 0.5;
    double const r2 = x.x * x.x + x.y * x.y;
    double const u1 = a * period - x.z;
    double const u2 = a * period + x.z;
    double const s1 = std::sqrt(r2 + u1 * u1);
    double const s2 = std::sqrt(r2 + u2 * u2);
    double const l = period;

    double value = std::log(4 * l * l * a * a / ((u1 + s1) * (u2 + s2))) / l;
    double gt = -(1 / (s1 * (s1 + u1)) + 1 / (s2 * (s2 + u2))) / l;
    double g3 = (1 / s1 - 1 / s2) / l;

    double const s1c = s1 * s1 * s1;
    double const s2c = s2 * s2 * s2;
    double const s1q = s1c * s1 * s1;
    double const s2q = s2c * s2 * s2;
    double const dval = -l * u1 / s1c - l * u2 / s2c + 2 / (a * a * l);
    double const dgt = 3 * l * (u1 / s1q + u2 / s2q);
    double const dg3 = l * (r2 - 2 * u1 * u1) / s1q - l * (r2 - 2 * u2 * u2) / s2q;
    value += dval / 24;
    gt += dgt / 24;
    g3 += dg3 / 24;

    out.value += value;
    out.grad += Vec3{x.x * gt, x.y * gt, g3};
}

//---------------------------------------------------------------------------//
/*!
 * Bracket 1/|x| + sum_m P_m and its gradient.
 *
 * With eps > 0 the Coulomb term is replaced by its Gaussian-blob version
 * for |x| < 6 eps.
 */
ImageSum image_sum(Vec3 const& x,
                   int pairs,
                   double period,
                   ImageTail tail,
                   double eps,
                   bool want_value)
{
    ImageSum out;
    double const r2 = x.x * x.x + x.y * x.y;
    double const rho2 = r2 + x.z * x.z;
    double const rho = std::sqrt(rho2);
    double coulomb = 1;
    if (eps > 0 && rho < 6 * eps)
        coulomb = rho > 0 ? blob_factor(rho / eps) : 0;
    if (rho > 0)
    {
        double const inv = 1 / rho;
        double const inv3 = inv * inv * inv;
        if (want_value)
            out.value = inv;
        out.grad = (-coulomb * inv3) * x;
    }
    for (int m = 1; m <= pairs; ++m)
    {
        double const ml = m * period;
        double const d1 = x.z - ml;
        double const d2 = x.z + ml;
        double const q1 = 1 / std::sqrt(r2 + d1 * d1);
        double const q2 = 1 / std::sqrt(r2 + d2 * d2);
        if (want_value)
            out.value += q1 + q2 - 2 / ml;
        double const c1 = q1 * q1 * q1;
        double const c2 = q2 * q2 * q2;
        double const ct = -(c1 + c2);
        out.grad += Vec3{ct * x.x, ct * x.y, -(d1 * c1 + d2 * c2)};
    }
    if (tail == ImageTail::multipole)
        add_multipole_tail(x, pairs, period, out);
    else
        add_integral_tail(x, pairs, period, out);
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
char const* to_string(Representation r)
{
    return r == Representation::bessel_series ? "bessel_series" : "image_sum";
}

char const* to_string(Normalization n)
{
    return n == Normalization::consistent ? "consistent" : "literal";
}

char const* to_string(ImageTail t)
{
    return t == ImageTail::multipole ? "multipole" : "integral";
}

//---------------------------------------------------------------------------//
void KernelConfig::validate() const
{
    if (series_truncation < 1)
    {
        throw ValidationError("invalid_series_truncation",
                              "series_truncation must be >= 1");
    }
    if (image_truncation < 1 || image_truncation >= max_pairs)
    {
        throw ValidationError("invalid_image_truncation",
                              "image_truncation must be in [1, "
                                  + std::to_string(max_pairs - 1) + "]");
    }
    if (!(switch_radius >= 0) || !std::isfinite(switch_radius))
    {
        throw ValidationError("invalid_switch_radius",
                              "switch_radius must be positive (0 = default)");
    }
    if (!(std::fabs(euler_gamma - std::numbers::egamma) <= 1e-15))
    {
        throw ValidationError("invalid_euler_gamma",
                              "euler_gamma must match the Euler-Mascheroni "
                              "constant to 15 digits");
    }
    if (!(blob_epsilon >= 0) || !std::isfinite(blob_epsilon))
    {
        throw ValidationError("invalid_blob_epsilon",
                              "blob_epsilon must be nonnegative");
    }
}

double KernelConfig::effective_switch_radius() const
{
    return switch_radius > 0 ? switch_radius
                             : default_switch_factor * h.kappa();
}

double KernelConfig::series_coefficient() const
{
    double const k = h.kappa();
    return normalization == Normalization::consistent ? 2 / k
                                                      : 1 / (2 * pi * k * k);
}

double KernelConfig::log_coefficient() const
{
    double const k = h.kappa();
    return normalization == Normalization::consistent ? 1 / k
                                                      : 1 / (2 * pi * k * k);
}

//---------------------------------------------------------------------------//
double reduce_period(double x3, HelixParams const& h)
{
    double const period = h.period();
    double const half = period / 2;
    double r = x3 - period * std::round(x3 / period);
    if (r <= -half)
        r += period;
    else if (r > half)
        r -= period;
    return r;
}

//---------------------------------------------------------------------------//
double hurwitz_zeta(double s, double a)
{
    if (!(s > 1) || !(a >= 1))
        throw DomainError("hurwitz_zeta requires s > 1 and a >= 1");
    // Direct partial sum followed by Euler-Maclaurin with Bernoulli terms
    constexpr int n = 16;
    constexpr std::array<double, 8> b2k{1.0 / 6,
                                        -1.0 / 30,
                                        1.0 / 42,
                                        -1.0 / 30,
                                        5.0 / 66,
                                        -691.0 / 2730,
                                        7.0 / 6,
                                        -3617.0 / 510};
    double sum = 0;
    for (int k = n - 1; k >= 0; --k)
        sum += std::pow(a + k, -s);
    double const b = a + n;
    double const bs = std::pow(b, -s);
    double tail = b * bs / (s - 1) + bs / 2;
    // term_j = B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * b^{-s-2j+1}
    double rising = s;
    double power = bs / b;
    double fact = 2;
    for (int j = 1; j <= int(b2k.size()); ++j)
    {
        double const term = b2k[j - 1] / fact * rising * power;
        tail += term;
        if (std::fabs(term) < 1e-18 * tail)
            break;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        power /= b * b;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum + tail;
}

//---------------------------------------------------------------------------//
KernelEvaluator::KernelEvaluator(KernelConfig const& cfg)
    : cfg_(cfg)
    , kappa_(cfg.h.kappa())
    , period_(cfg.h.period())
    , switch_(cfg.effective_switch_radius())
    , coef_a_(cfg.series_coefficient())
    , coef_b_(cfg.log_coefficient())
{
    cfg_.validate();
    green_const_ = (cfg.euler_gamma - std::log(4 * pi * kappa_)) / 2;
    (void)zeta_table();
}

//---------------------------------------------------------------------------//
double KernelEvaluator::reduce(double x3) const
{
    double r = x3;
    double const half = period_ / 2;
    if (r > half || r <= -half)
        r = reduce_period(x3, cfg_.h);
    return r;
}

//---------------------------------------------------------------------------//
std::pair<int, ImageTail> KernelEvaluator::select_tail(Vec3 const& x) const
{
    double const rho = norm(x);
    if (cfg_.image_tail == ImageTail::multipole)
    {
        int const need = int(std::ceil(rho / (multipole_ratio * period_))) - 1;
        int const pairs = std::max(cfg_.image_truncation, need);
        if (pairs < max_pairs)
            return {pairs, ImageTail::multipole};
    }
    // Midpoint remainder ~ 0.15 |x|^2 / (L^3 a^6)
    double const need
        = std::pow(1.5e12 * rho * rho / std::pow(period_, 3), 1.0 / 6);
    return {std::max(cfg_.image_truncation, int(std::ceil(need))),
            ImageTail::integral};
}

//---------------------------------------------------------------------------//
int KernelEvaluator::image_pairs(Vec3 x) const
{
    x.z = reduce(x.z);
    return select_tail(x).first;
}

//---------------------------------------------------------------------------//
double KernelEvaluator::green_series(Vec3 x) const
{
    x.z = reduce(x.z);
    double const r = std::hypot(x.x, x.y);
    if (!(r > 0))
        throw SingularInputError("green_series: x~ == 0");
    double const a = r / kappa_;
    double const b = x.z / kappa_;
    double const log_r = std::log(r);
    double const decay = std::exp(-a);
    double const cb = std::cos(b);
    double c_prev = 1;
    double c_cur = cb;
    double damp = decay;
    double sum = 0;
    for (int n = 1; n <= cfg_.series_truncation; ++n)
    {
        double const term = damp * k0e(n * a);
        sum += term * c_cur;
        if (term < 1e-17 * (std::fabs(sum) + std::fabs(log_r)) || damp == 0)
            break;
        double const c_next = 2 * cb * c_cur - c_prev;
        c_prev = c_cur;
        c_cur = c_next;
        damp *= decay;
    }
    return coef_a_ * sum - coef_b_ * log_r;
}

//---------------------------------------------------------------------------//
double KernelEvaluator::green_images(Vec3 x) const
{
    x.z = reduce(x.z);
    double const r = std::hypot(x.x, x.y);
    double const line = coef_a_ / 2 - coef_b_;
    if (!(norm(x) > 0) || (line != 0 && !(r > 0)))
        throw SingularInputError("green_images: singular point");
    auto const [pairs, tail] = select_tail(x);
    ImageSum const s = image_sum(x, pairs, period_, tail, 0, true);
    double result = coef_a_ * (green_const_ + pi * kappa_ / 2 * s.value);
    if (line != 0)
        result += line * std::log(r);
    return result;
}

//---------------------------------------------------------------------------//
Vec3 KernelEvaluator::kernel_series(Vec3 x) const
{
    x.z = reduce(x.z);
    double const r2 = x.x * x.x + x.y * x.y;
    double const r = std::sqrt(r2);
    if (!(r > 0))
        throw SingularInputError("kernel_series: x~ == 0");
    double const a = r / kappa_;
    double const b = x.z / kappa_;
    double const decay = std::exp(-a);
    double const cb = std::cos(b);
    double const sb = std::sin(b);
    double c_prev = 1;
    double s_prev = 0;
    double c_cur = cb;
    double s_cur = sb;
    double damp = decay;
    double dr = 0;  // sum n K1(n a) cos(n b)
    double dz = 0;  // sum n K0(n a) sin(n b)
    for (int n = 1; n <= cfg_.series_truncation; ++n)
    {
        BesselPair const kk = k01e(n * a);
        double const t1 = n * damp * kk.k1;
        dr += t1 * c_cur;
        dz += n * damp * kk.k0 * s_cur;
        if (t1 < 1e-17 * (std::fabs(dr) + kappa_ / r) || damp == 0)
            break;
        double const c_next = 2 * cb * c_cur - c_prev;
        double const s_next = 2 * cb * s_cur - s_prev;
        c_prev = c_cur;
        c_cur = c_next;
        s_prev = s_cur;
        s_cur = s_next;
        damp *= decay;
    }
    // grad G = A grad S - B x~/r^2
    double const radial = (-coef_a_ * dr / kappa_ - coef_b_ / r) / r;
    double const axial = -coef_a_ * dz / kappa_;
    constexpr double inv4pi2 = 1 / (4 * pi * pi);
    return inv4pi2 * Vec3{radial * x.x, radial * x.y, axial};
}

//---------------------------------------------------------------------------//
Vec3 KernelEvaluator::images_impl(Vec3 x, double eps) const
{
    double const r2 = x.x * x.x + x.y * x.y;
    auto const [pairs, tail] = select_tail(x);
    ImageSum const s = image_sum(x, pairs, period_, tail, eps, false);
    Vec3 grad = (coef_a_ * pi * kappa_ / 2) * s.grad;
    double const line = coef_a_ / 2 - coef_b_;
    if (line != 0 && r2 > 0)
    {
        double f = line / r2;
        if (eps > 0 && r2 < 36 * eps * eps)
            f *= -std::expm1(-r2 / (eps * eps));
        grad.x += f * x.x;
        grad.y += f * x.y;
    }
    constexpr double inv4pi2 = 1 / (4 * pi * pi);
    return inv4pi2 * grad;
}

//---------------------------------------------------------------------------//
Vec3 KernelEvaluator::kernel_images(Vec3 x) const
{
    x.z = reduce(x.z);
    if (!(x.x * x.x + x.y * x.y > 0))
        throw SingularInputError("kernel_images: x~ == 0");
    return images_impl(x, 0);
}

//---------------------------------------------------------------------------//
KernelValue KernelEvaluator::kernel(Vec3 x) const
{
    x.z = reduce(x.z);
    double const r = std::hypot(x.x, x.y);
    if (!(r > 0))
        throw SingularInputError("biot_savart_kernel: x~ == 0");
    if (r <= switch_)
        return {images_impl(x, 0), Representation::image_sum};
    return {kernel_series(x), Representation::bessel_series};
}

//---------------------------------------------------------------------------//
Vec3 KernelEvaluator::kernel_far(Vec3 x) const
{
    double const r2 = x.x * x.x + x.y * x.y;
    if (!(r2 > 0))
        throw SingularInputError("kernel_far: x~ == 0");
    double const f = coef_b_ / (4 * pi * pi * r2);
    return {f * x.x, f * x.y, 0};
}

//---------------------------------------------------------------------------//
Vec3 KernelEvaluator::kernel_blob(Vec3 x, double eps) const
{
    x.z = reduce(x.z);
    double const r = std::hypot(x.x, x.y);
    if (r <= std::max(switch_, 6 * eps))
    {
        bool const line = coef_a_ / 2 != coef_b_;
        if (!(eps > 0) && !(r > 0) && (line || x.z == 0))
            throw SingularInputError("kernel: singular point without "
                                     "regularization");
        return images_impl(x, eps);
    }
    return kernel_series(x);
}

//---------------------------------------------------------------------------//
double green_series(Vec3 const& x, KernelConfig const& cfg)
{
    return KernelEvaluator(cfg).green_series(x);
}

double green_images(Vec3 const& x, KernelConfig const& cfg)
{
    return KernelEvaluator(cfg).green_images(x);
}

KernelValue biot_savart_kernel(Vec3 const& x, KernelConfig const& cfg)
{
    return KernelEvaluator(cfg).kernel(x);
}

double kernel_bound_ratio(Vec3 const& x, KernelConfig const& cfg)
{
    KernelValue const k = KernelEvaluator(cfg).kernel(x);
    Vec3 y = x;
    y.z = reduce_period(x.z, cfg.h);
    double const r = std::hypot(y.x, y.y);
    return norm(k.value) / (1 / dot(y, y) + 1 / r);
}

//---------------------------------------------------------------------------//
}  // namespace helix
