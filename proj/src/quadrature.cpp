//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file quadrature.cpp
//---------------------------------------------------------------------------//
#include "helix/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <boost/math/special_functions/legendre.hpp>

#include "helix/error.hpp"

namespace helix
{
namespace
{
//---------------------------------------------------------------------------//
//! Rule on [-1, 1], cached by order
QuadratureRule const& reference_rule(int n)
{
    static std::map<int, QuadratureRule> cache;
    static std::mutex lock;
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    // Boost returns the nonnegative zeros in increasing order
    auto const zeros = boost::math::legendre_p_zeros<double>(n);
    QuadratureRule rule;
    auto weight = [n](double x) {
        double const dp = boost::math::legendre_p_prime(n, x);
        return 2 / ((1 - x * x) * dp * dp);
    };
    for (auto z = zeros.rbegin(); z != zeros.rend(); ++z)
    {
        if (*z == 0)
            continue;
        rule.x.push_back(-*z);
        rule.w.push_back(weight(*z));
    }
    if (n % 2 == 1)
    {
        rule.x.push_back(0);
        rule.w.push_back(weight(0));
    }
    for (double z : zeros)
    {
        if (z == 0)
            continue;
        rule.x.push_back(z);
        rule.w.push_back(weight(z));
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

//---------------------------------------------------------------------------//
QuadratureRule gauss_legendre(int n, double a, double b)
{
    if (n < 1)
        throw ValidationError("invalid_quadrature_order",
                              "Gauss-Legendre order must be positive");
    QuadratureRule const& ref = reference_rule(n);
    QuadratureRule rule;
    double const mid = (a + b) / 2;
    double const half = (b - a) / 2;
    rule.x.reserve(ref.x.size());
    rule.w.reserve(ref.w.size());
    for (std::size_t i = 0; i < ref.x.size(); ++i)
    {
        rule.x.push_back(mid + half * ref.x[i]);
        rule.w.push_back(half * ref.w[i]);
    }
    return rule;
}

//---------------------------------------------------------------------------//
double smooth_step(double t)
{
    if (t <= 0)
        return 0;
    if (t >= 1)
        return 1;
    double const a = std::exp(-1 / t);
    double const b = std::exp(-1 / (1 - t));
    return a / (a + b);
}

double smooth_step_derivative(double t)
{
    if (!(t > 0 && t < 1))
        return 0;
    double const s = smooth_step(t);
    return s * (1 - s) * (1 / (t * t) + 1 / ((1 - t) * (1 - t)));
}

//---------------------------------------------------------------------------//
}  // namespace helix
