//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bessel.cpp
//!
//! Three regimes: the ascending series for t <= 2, Steed's continued
//! fraction (Temme's CF2) up to t = 25, and the Hankel asymptotic series
//! beyond.
//---------------------------------------------------------------------------//
#include "helix/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "helix/error.hpp"

namespace helix
{
namespace
{
//---------------------------------------------------------------------------//
constexpr double eps = std::numeric_limits<double>::epsilon();

void check_argument(double t)
{
    if (!(t > 0))
    {
        throw DomainError("modified Bessel K requires t > 0, got "
                          + std::to_string(t));
    }
}

//---------------------------------------------------------------------------//
/*!
 * Unscaled K0, K1 from the ascending series.
 *
 * K0 = sum_k c_k [H_k - ln(t/2) - gamma],
 * K1 = 1/t + (t/2) sum_k d_k [ln(t/2) - (psi(k+1) + psi(k+2))/2]
 * with c_k = (t^2/4)^k/(k!)^2 and d_k = c_k/(k+1).
 */
BesselPair series_small(double t)
{
    double const q = t * t / 4;
    double const lg = std::log(t / 2) + std::numbers::egamma;
    double c = 1;
    double harmonic = 0;
    double s0 = -lg;
    double s1 = 0;
    for (int k = 0; k < 60; ++k)
    {
        if (k > 0)
        {
            c *= q / (double(k) * k);
            harmonic += 1.0 / k;
            s0 += c * (harmonic - lg);
        }
        // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
        double const d = c / (k + 1);
        double const term = d * (lg - harmonic - 0.5 / (k + 1));
        s1 += term;
        if (k > 0 && std::fabs(c) < eps * 1e-2 * std::fabs(s0)
            && std::fabs(term) < eps * 1e-2 * std::fabs(s1))
        {
            break;
        }
    }
    return {s0, 1 / t + t / 2 * s1};
}

//---------------------------------------------------------------------------//
/*!
 * Scaled K0, K1 from Steed's algorithm for the second continued fraction.
 */
BesselPair steed(double t)
{
    double b = 2 * (1 + t);
    double d = 1 / b;
    double h = d;
    double delh = d;
    double q1 = 0;
    double q2 = 1;
    double const a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1 + q * delh;
    for (int i = 1; i < 10000; ++i)
    {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        double const qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2;
        d = 1 / (b + a * d);
        delh = (b * d - 1) * delh;
        h += delh;
        double const dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < eps / 2)
            break;
    }
    h *= a1;
    double const k0 = std::sqrt(std::numbers::pi / (2 * t)) / s;
    double const k1 = k0 * (t + 0.5 - h) / t;
    return {k0, k1};
}

//---------------------------------------------------------------------------//
/*!
 * Scaled K0, K1 from the Hankel asymptotic expansion.
 */
BesselPair hankel(double t)
{
    double const z8 = 8 * t;
    double term0 = 1;
    double term1 = 1;
    double s0 = 1;
    double s1 = 1;
    for (int k = 1; k < 60; ++k)
    {
        double const odd = 2 * k - 1;
        term0 *= -odd * odd / (k * z8);
        term1 *= (4 - odd * odd) / (k * z8);
        s0 += term0;
        s1 += term1;
        if (std::fabs(term0) < eps * 1e-2 && std::fabs(term1) < eps * 1e-2)
            break;
    }
    double const pref = std::sqrt(std::numbers::pi / (2 * t));
    return {pref * s0, pref * s1};
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
BesselPair k01e(double t)
{
    check_argument(t);
    if (t <= 2)
    {
        BesselPair r = series_small(t);
        double const e = std::exp(t);
        return {r.k0 * e, r.k1 * e};
    }
    if (t <= 25)
        return steed(t);
    return hankel(t);
}

//---------------------------------------------------------------------------//
double k0e(double t) { return k01e(t).k0; }
double k1e(double t) { return k01e(t).k1; }

//---------------------------------------------------------------------------//
double k0(double t)
{
    check_argument(t);
    if (t <= 2)
        return series_small(t).k0;
    return k01e(t).k0 * std::exp(-t);
}

//---------------------------------------------------------------------------//
double k1(double t)
{
    check_argument(t);
    if (t <= 2)
        return series_small(t).k1;
    return k01e(t).k1 * std::exp(-t);
}

//---------------------------------------------------------------------------//
}  // namespace helix
