//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file geometry.hpp
//! Screw motions, the helical field xi, swirl and helicality residuals.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <numbers>

#include "vec.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
/*!
 * Pitch parameter kappa of the screw group.
 *
 * The slab Omega = R^2 x (-pi kappa, pi kappa] is one period; the period
 * 2 pi kappa is always recomputed from kappa.
 */
class HelixParams
{
  public:
    // Construct with a positive pitch, throwing ValidationError otherwise
    explicit HelixParams(double kappa = 1);

    double kappa() const { return kappa_; }
    double period() const { return 2 * std::numbers::pi * kappa_; }

  private:
    double kappa_;
};

//---------------------------------------------------------------------------//
//! Slice coordinates of a point: its helix crosses x3 = 0 at z.
struct SlicePoint
{
    Vec2 z;
    double theta = 0;
};

using VelocitySampler = std::function<Vec3(Vec3 const&)>;

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

// Rotation about the x3 axis: rows (c, s, 0), (-s, c, 0), (0, 0, 1)
Vec3 rotate(double theta, Vec3 const& v);
Vec2 rotate(double theta, Vec2 const& v);

// Screw motion R_theta x + (0, 0, kappa theta)
Vec3 screw(double theta, Vec3 const& x, HelixParams const& h);

// Helical field (x2, -x1, kappa)
Vec3 xi(Vec3 const& x, HelixParams const& h);

// Helical swirl u . xi(x)
double swirl(Vec3 const& u, Vec3 const& x, HelixParams const& h);

// field(S_theta x) - R_theta field(x)
Vec3 helicality_residual(VelocitySampler const& field,
                         Vec3 const& x,
                         double theta,
                         HelixParams const& h);

// Slice point and unreduced angle theta = x3 / kappa
SlicePoint project_to_slice(Vec3 const& x, HelixParams const& h);

// Map an angle into (-pi, pi]
double reduce_angle(double theta);

//---------------------------------------------------------------------------//
}  // namespace helix
