//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_kernel.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helix/bessel.hpp"
#include "helix/error.hpp"
#include "helix/kernel.hpp"
#include "oracles.hpp"

using namespace helix;
using std::numbers::pi;

namespace
{
//! Brute-force image sum of the bracket 1/|x| + sum_m P_m, m <= 200000,
//! with the remainder closed by its leading 1/m^3 asymptote.
double brute_bracket(Vec3 x, double period)
{
    long double r2 = (long double)x.x * x.x + (long double)x.y * x.y;
    long double sum = 0;
    int const mmax = 200000;
    for (int m = mmax; m >= 1; --m)
    {
        long double const ml = (long double)m * period;
        long double const d1 = x.z - ml;
        long double const d2 = x.z + ml;
        sum += 1 / std::sqrt(r2 + d1 * d1) + 1 / std::sqrt(r2 + d2 * d2) - 2 / ml;
    }
    // Remainder sum_{m>mmax} (2 x3^2 - r^2) / (m L)^3
    long double const c = (2 * (long double)x.z * x.z - r2) / std::pow((long double)period, 3);
    long double const tail = c / (2.0L * mmax * mmax);
    return double(sum + tail + 1 / std::sqrt(r2 + (long double)x.z * x.z));
}

Vec3 random_point(std::mt19937_64& rng, double rmin, double rmax, double kappa)
{
    std::uniform_real_distribution<double> u(0, 1);
    double const r = rmin * std::pow(rmax / rmin, u(rng));
    double const a = 2 * pi * u(rng);
    double const z = pi * kappa * (2 * u(rng) - 1);
    return {r * std::cos(a), r * std::sin(a), z};
}
}  // namespace

TEST_CASE("period reduction")
{
    HelixParams h(1.0);
    CHECK(reduce_period(0, h) == 0);
    CHECK(std::fabs(reduce_period(2 * pi, h)) < 1e-15);
    CHECK(reduce_period(pi + 0.25, h) == doctest::Approx(-pi + 0.25));
    CHECK(reduce_period(-pi, h) == doctest::Approx(pi));
    CHECK(reduce_period(pi, h) == pi);
}

TEST_CASE("hurwitz zeta")
{
    CHECK(hurwitz_zeta(2, 1) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
    CHECK(hurwitz_zeta(4, 1) == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-15));
    // zeta(s, a) - zeta(s, a + 1) = a^{-s}
    for (double s : {3.0, 7.0, 31.0, 101.0})
    {
        for (double a : {1.0, 3.0, 10.0})
        {
            double const d = hurwitz_zeta(s, a) - hurwitz_zeta(s, a + 1);
            CHECK(d == doctest::Approx(std::pow(a, -s)).epsilon(1e-13));
        }
    }
}

TEST_CASE("image bracket against brute force")
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    double const a = cfg.series_coefficient();
    double const b = cfg.log_coefficient();
    double const c0 = (std::numbers::egamma - std::log(4 * pi)) / 2;
    for (Vec3 x : {Vec3{0.3, 0.1, 0.2}, Vec3{1.5, -0.4, -2.9}, Vec3{3.0, 2.0, 3.1}})
    {
        double const r = std::hypot(x.x, x.y);
        double const expect = a * (c0 + pi / 2 * brute_bracket(x, 2 * pi))
                              + (a / 2 - b) * std::log(r);
        CHECK(ev.green_images(x) == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("series and images agree; gamma constant")
{
    for (double kappa : {1.0, 0.6, 2.5})
    {
        KernelConfig cfg;
        cfg.h = HelixParams(kappa);
        KernelEvaluator ev(cfg);
        std::mt19937_64 rng(3);
        double worst = 0;
        for (int i = 0; i < 300; ++i)
        {
            Vec3 const x = random_point(rng, 0.05 * kappa, 10 * kappa, kappa);
            worst = std::max(worst, std::fabs(ev.green_series(x) - ev.green_images(x)));
        }
        CHECK(worst < 1e-10);
    }
    // Using gamma itself inside the logarithm instead of e^gamma breaks it
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    Vec3 const x{0.7, 0.2, 0.5};
    double const shift = cfg.series_coefficient() / 2 * (std::log(std::numbers::egamma) - std::numbers::egamma);
    CHECK(std::fabs(ev.green_series(x) - ev.green_images(x) - 0) < 1e-12);
    CHECK(std::fabs(shift) > 0.1);
}

TEST_CASE("literal normalization keeps the representation identity")
{
    KernelConfig cfg;
    cfg.normalization = Normalization::literal;
    cfg.h = HelixParams(0.8);
    KernelEvaluator ev(cfg);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i)
    {
        Vec3 const x = random_point(rng, 0.04, 8, 0.8);
        CHECK(ev.green_series(x) == doctest::Approx(ev.green_images(x)).epsilon(1e-10));
        Vec3 const ks = ev.kernel_series(x);
        Vec3 const ki = ev.kernel_images(x);
        CHECK(norm(ks - ki) <= 1e-9 * norm(ks));
    }
}

TEST_CASE("integral tail route")
{
    KernelConfig cfg;
    KernelConfig alt = cfg;
    alt.image_tail = ImageTail::integral;
    KernelEvaluator ev(cfg);
    KernelEvaluator ev_alt(alt);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i)
    {
        Vec3 const x = random_point(rng, 0.05, 4, 1);
        CHECK(ev.green_images(x) == doctest::Approx(ev_alt.green_images(x)).epsilon(1e-11));
        Vec3 const a = ev.kernel_images(x);
        Vec3 const b = ev_alt.kernel_images(x);
        CHECK(norm(a - b) <= 1e-10 * norm(a));
    }
    CHECK(ev_alt.image_pairs({1, 1, 1}) > ev.image_pairs({1, 1, 1}));
}

TEST_CASE("symmetries of G and K")
{
    KernelConfig cfg;
    cfg.h = HelixParams(1.3);
    KernelEvaluator ev(cfg);
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i)
    {
        Vec3 const x = random_point(rng, 0.05, 12, 1.3);
        Vec3 const xm{x.x, x.y, -x.z};
        CHECK(ev.green_series(x) == doctest::Approx(ev.green_series(xm)).epsilon(1e-13));
        CHECK(ev.green_images(x) == doctest::Approx(ev.green_images(xm)).epsilon(1e-13));
        Vec3 const k = ev.kernel(x).value;
        Vec3 const kneg = ev.kernel(-x).value;
        CHECK(norm(k + kneg) <= 1e-13 * norm(k));
        double const th = 2 * pi * i / 200.0;
        Vec3 const krot = ev.kernel(rotate(th, x)).value;
        CHECK(norm(krot - rotate(th, k)) <= 1e-12 * norm(k));
        Vec3 const flat{x.x, x.y, 0};
        CHECK(ev.kernel(flat).value.z == 0);
        CHECK(ev.green_series(rotate(th, x)) == doctest::Approx(ev.green_series(x)).epsilon(1e-13));
    }
}

TEST_CASE("paths agree on the kernel")
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    std::mt19937_64 rng(21);
    double worst = 0;
    for (int i = 0; i < 1000; ++i)
    {
        Vec3 const x = random_point(rng, 0.05, 10, 1);
        Vec3 const a = ev.kernel_series(x);
        Vec3 const b = ev.kernel_images(x);
        worst = std::max(worst, norm(a - b) / norm(a));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("finite differences of G reproduce 4 pi^2 K")
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    double const h = 1e-5;
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i)
    {
        Vec3 const x = random_point(rng, 0.1, 8, 1);
        Vec3 fd;
        fd.x = (ev.green_series(x + Vec3{h, 0, 0}) - ev.green_series(x - Vec3{h, 0, 0})) / (2 * h);
        fd.y = (ev.green_series(x + Vec3{0, h, 0}) - ev.green_series(x - Vec3{0, h, 0})) / (2 * h);
        fd.z = (ev.green_series(x + Vec3{0, 0, h}) - ev.green_series(x - Vec3{0, 0, h})) / (2 * h);
        Vec3 const k = (4 * pi * pi) * ev.kernel(x).value;
        CHECK(norm(fd - k) <= std::max(1e-6, 1e2 * h * h));
    }
}

TEST_CASE("laplacian of G vanishes away from the source")
{
    // Consistent normalization: G is harmonic off the source lattice
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    double const h = 1e-3;
    for (Vec3 x : {Vec3{0.5, 0.2, 0.7}, Vec3{2, -1, -2}, Vec3{0.2, 0.1, 3}})
    {
        double lap = -6 * ev.green_images(x);
        for (Vec3 e : {Vec3{h, 0, 0}, Vec3{0, h, 0}, Vec3{0, 0, h}})
            lap += ev.green_images(x + e) + ev.green_images(x - e);
        lap /= h * h;
        CHECK(std::fabs(lap) < 1e-4);
    }
}

TEST_CASE("point-source strength")
{
    // Flux of grad G through a small sphere about the source is -4 pi^2
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    double const rad = 1e-3;
    int const n = 64;
    double flux = 0;
    for (int i = 0; i < n; ++i)
    {
        double const ct = std::cos(pi * (i + 0.5) / n);
        double const st = std::sqrt(1 - ct * ct);
        for (int j = 0; j < 2 * n; ++j)
        {
            double const ph = pi * (j + 0.3) / n;
            Vec3 const nrm{st * std::cos(ph), st * std::sin(ph), ct};
            Vec3 const k = ev.kernel(rad * nrm).value;
            double const w = std::cos(pi * i / n) - std::cos(pi * (i + 1) / n);
            flux += dot(k, nrm) * w;
        }
    }
    flux *= 4 * pi * pi * rad * rad * (pi / n);
    CHECK(flux == doctest::Approx(-4 * pi * pi).epsilon(1e-5));
}

TEST_CASE("far field and near field")
{
    for (auto norm_kind : {Normalization::consistent, Normalization::literal})
    {
        KernelConfig cfg;
        cfg.normalization = norm_kind;
        cfg.h = HelixParams(0.7);
        KernelEvaluator ev(cfg);
        double const b = cfg.log_coefficient();
        // Far field: ratio tends to B / 4 pi^2
        double const r = 60;
        double const ratio = kernel_bound_ratio({r, 0, 0}, cfg);
        double const limit = b / (4 * pi * pi);
        CHECK(ratio == doctest::Approx(limit / (1 + 1 / r)).epsilon(1e-10));
        Vec3 const far = ev.kernel_far({r, 0, 0.3});
        // K = K1 - K2 with K1 exponentially small here
        CHECK(norm(ev.kernel({r, 0, 0.3}).value + far) < 1e-20);
        // Near field: G - A (pi k / 2) / |x| stays bounded along x~ = x3 / 10
        double const a = cfg.series_coefficient();
        double prev = 0;
        for (int i = 0; i < 6; ++i)
        {
            double const s = std::pow(10.0, -1 - i);
            Vec3 const x{s / 10, 0, s};
            double const rest = ev.green_images(x) - a * pi * 0.7 / 2 / norm(x);
            double const lgr = std::fabs(a / 2 - b) * std::fabs(std::log(s / 10));
            CHECK(std::fabs(rest) < 5 + lgr);
            if (i > 0 && a / 2 == b)
                CHECK(std::fabs(rest - prev) < 1e-1);
            prev = rest;
        }
    }
    // Literal normalization far-field constant
    KernelConfig lit;
    lit.normalization = Normalization::literal;
    CHECK(lit.log_coefficient() / (4 * pi * pi) == doctest::Approx(1 / (8 * pi * pi * pi)));
}

TEST_CASE("series tail beyond ten kappa")
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    double const a = cfg.series_coefficient();
    double const b = cfg.log_coefficient();
    Vec3 const x{10, 0, 0.4};
    double const g = ev.green_series(x);
    // Remaining deviation is the first Bessel mode
    double const first = a * k0(10) * std::cos(0.4) + a * k0(20) * std::cos(0.8);
    CHECK(std::fabs(g + b * std::log(10) - first) < 1e-12);
    Vec3 const y{30, 0, 0.4};
    CHECK(std::fabs(ev.green_series(y) + b * std::log(30)) < 1e-12);
}

TEST_CASE("bound ratio finite and bounded")
{
    KernelConfig cfg;
    std::mt19937_64 rng(77);
    double sup = 0;
    for (int i = 0; i < 2000; ++i)
    {
        Vec3 const x = random_point(rng, 1e-4, 1e4, 1);
        double const q = kernel_bound_ratio(x, cfg);
        CHECK(std::isfinite(q));
        CHECK(q > 0);
        sup = std::max(sup, q);
    }
    CHECK(sup < 1);
}

TEST_CASE("singular inputs")
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    CHECK_THROWS_AS(ev.green_series({0, 0, 1}), SingularInputError);
    CHECK_THROWS_AS(ev.green_images({0, 0, 0}), SingularInputError);
    CHECK_THROWS_AS(ev.kernel({0, 0, 0.5}), SingularInputError);
    CHECK_THROWS_AS(kernel_bound_ratio({0, 0, 0.5}, cfg), SingularInputError);
    // Consistent normalization: G is finite on the axis away from the source
    CHECK(std::isfinite(ev.green_images({0, 0, 1})));
    // Blob kernel is defined everywhere and vanishes at the centre
    CHECK(norm(ev.kernel_blob({0, 0, 0}, 0.1)) == 0);
}

TEST_CASE("blob kernel")
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    double const eps = 0.05;
    // Outside 6 eps it coincides with the exact kernel
    Vec3 const x{0.2, 0.25, 0.1};
    CHECK(norm(ev.kernel_blob(x, eps) - ev.kernel(x).value) == 0);
    // Inside it is bounded by the exact kernel and continuous at 6 eps
    Vec3 const y{0.02, 0.01, 0.0};
    CHECK(norm(ev.kernel_blob(y, eps)) < norm(ev.kernel(y).value));
    Vec3 const e{1, 0, 0};
    Vec3 const lo = ev.kernel_blob(std::nextafter(6 * eps, 0.0) * e, eps);
    Vec3 const hi = ev.kernel_blob(std::nextafter(6 * eps, 1.0) * e, eps);
    CHECK(norm(lo - hi) <= 1e-12 * norm(hi));
}

TEST_CASE("configuration validation")
{
    KernelConfig cfg;
    cfg.image_truncation = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = KernelConfig{};
    cfg.euler_gamma = 0.5772;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = KernelConfig{};
    cfg.blob_epsilon = -1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
