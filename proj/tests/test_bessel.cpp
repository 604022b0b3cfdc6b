//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_bessel.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "helix/bessel.hpp"
#include "helix/error.hpp"
#include "oracles.hpp"

using namespace helix;

TEST_CASE("frozen reference values")
{
    // Quadrature oracle values frozen at unit argument
    CHECK(oracle::bessel_k(0, 1) == doctest::Approx(0.42102443824070834).epsilon(1e-15));
    CHECK(oracle::bessel_k(1, 1) == doctest::Approx(0.6019072301972346).epsilon(1e-15));
    CHECK(k0(1) == doctest::Approx(0.42102443824070834).epsilon(1e-14));
    CHECK(k1(1) == doctest::Approx(0.6019072301972346).epsilon(1e-14));
}

TEST_CASE("fast path against quadrature oracle")
{
    double worst = 0;
    int const n = 400;
    for (int i = 0; i < n; ++i)
    {
        double const t = std::pow(10.0, -6 + 8.5 * i / (n - 1));
        double const e0 = std::fabs(k0e(t) / oracle::bessel_k_scaled(0, t) - 1);
        double const e1 = std::fabs(k1e(t) / oracle::bessel_k_scaled(1, t) - 1);
        worst = std::max({worst, e0, e1});
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("scaled and unscaled agree")
{
    for (double t : {0.01, 0.5, 1.9, 2.1, 7.0, 24.0, 26.0, 80.0})
    {
        CHECK(k0(t) * std::exp(t) == doctest::Approx(k0e(t)).epsilon(1e-14));
        CHECK(k1(t) * std::exp(t) == doctest::Approx(k1e(t)).epsilon(1e-14));
    }
}

TEST_CASE("regime boundaries are continuous")
{
    for (double t : {2.0, 25.0})
    {
        double const lo = std::nextafter(t, 0.0);
        double const hi = std::nextafter(t, 100.0);
        CHECK(k0e(lo) == doctest::Approx(k0e(hi)).epsilon(1e-14));
        CHECK(k1e(lo) == doctest::Approx(k1e(hi)).epsilon(1e-14));
    }
}

TEST_CASE("monotone and ordered")
{
    double prev0 = k0(1e-6);
    double prev1 = k1(1e-6);
    for (int i = 1; i <= 2000; ++i)
    {
        double const t = 1e-6 * std::pow(700.0 / 1e-6, i / 2000.0);
        double const v0 = k0(t);
        double const v1 = k1(t);
        CHECK(v0 > 0);
        CHECK(v0 < prev0);
        CHECK(v1 < prev1);
        CHECK(v1 > v0);
        prev0 = v0;
        prev1 = v1;
    }
}

TEST_CASE("derivative identity K0' = -K1")
{
    for (double t : {0.05, 0.7, 3.0, 12.0, 40.0})
    {
        double const h = 1e-4 * t;
        double const d = -(k0(t + h) - k0(t - h)) / (2 * h);
        CHECK(d == doctest::Approx(k1(t)).epsilon(1e-7));
    }
}

TEST_CASE("large argument asymptote")
{
    for (double t : {50.0, 100.0})
    {
        double const lead = k0(t) * std::exp(t) * std::sqrt(2 * t / std::numbers::pi);
        // Leading correction of the Hankel series is -1/(8t)
        CHECK(std::fabs(lead - 1) < 0.13 / t);
        CHECK(std::fabs(lead - 1 + 1 / (8 * t)) < 0.1 / (t * t));
        CHECK(k0e(t) == doctest::Approx(oracle::bessel_k_scaled(0, t)).epsilon(1e-13));
    }
}

TEST_CASE("moment identities")
{
    auto f0 = [](double t) { return t * k0(t); };
    auto f1 = [](double t) { return t * k1(t); };
    double const m0 = oracle::integrate(f0, 0, 1) + oracle::integrate(f0, 1, 60);
    double const m1 = oracle::integrate(f1, 0, 1) + oracle::integrate(f1, 1, 60);
    CHECK(std::fabs(m0 - 1) < 1e-8);
    CHECK(std::fabs(m1 - std::numbers::pi / 2) < 1e-8);
}

TEST_CASE("domain errors and underflow")
{
    CHECK_THROWS_AS(k0(0), DomainError);
    CHECK_THROWS_AS(k1(-1), DomainError);
    CHECK_THROWS_AS(k0(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK(k0(800) == 0);
    CHECK(k0e(800) > 0);
}
