//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file geometry.cpp
//---------------------------------------------------------------------------//
#include "helix/geometry.hpp"

#include <cmath>
#include <string>

#include "helix/error.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
HelixParams::HelixParams(double kappa) : kappa_(kappa)
{
    if (!(kappa > 0) || !std::isfinite(kappa))
    {
        throw ValidationError("invalid_kappa",
                              "kappa must be positive and finite, got "
                                  + std::to_string(kappa));
    }
}

//---------------------------------------------------------------------------//
Vec3 rotate(double theta, Vec3 const& v)
{
    double const c = std::cos(theta);
    double const s = std::sin(theta);
    return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

Vec2 rotate(double theta, Vec2 const& v)
{
    double const c = std::cos(theta);
    double const s = std::sin(theta);
    return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

//---------------------------------------------------------------------------//
Vec3 screw(double theta, Vec3 const& x, HelixParams const& h)
{
    Vec3 result = rotate(theta, x);
    result.z += h.kappa() * theta;
    return result;
}

//---------------------------------------------------------------------------//
Vec3 xi(Vec3 const& x, HelixParams const& h)
{
    return {x.y, -x.x, h.kappa()};
}

//---------------------------------------------------------------------------//
double swirl(Vec3 const& u, Vec3 const& x, HelixParams const& h)
{
    return dot(u, xi(x, h));
}

//---------------------------------------------------------------------------//
Vec3 helicality_residual(VelocitySampler const& field,
                         Vec3 const& x,
                         double theta,
                         HelixParams const& h)
{
    return field(screw(theta, x, h)) - rotate(theta, field(x));
}

//---------------------------------------------------------------------------//
SlicePoint project_to_slice(Vec3 const& x, HelixParams const& h)
{
    double const theta = x.z / h.kappa();
    Vec3 const base = rotate(-theta, x);
    return {base.tilde(), theta};
}

//---------------------------------------------------------------------------//
double reduce_angle(double theta)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = theta - two_pi * std::round(theta / two_pi);
    if (r <= -std::numbers::pi)
        r += two_pi;
    else if (r > std::numbers::pi)
        r -= two_pi;
    return r;
}

//---------------------------------------------------------------------------//
}  // namespace helix
