//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file fixtures.hpp
//! Shared vorticity configurations for tests and the acceptance suite.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "helix/biotsavart.hpp"
#include "helix/geometry.hpp"
#include "helix/quadrature.hpp"
#include "oracles.hpp"

namespace fixture
{
//---------------------------------------------------------------------------//
inline double bump(double t)
{
    return std::fabs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0;
}

/*!
 * Two smooth helical tubes of radius a centred at (+d, 0) and (-d, 0) on
 * the slice, carrying circulations +1 and -1.
 */
struct TwoTubes
{
    helix::HelixParams h{1.0};
    double d = 0.5;
    double a = 0.25;
    double amplitude = 0;

    TwoTubes(helix::HelixParams hp, double dd, double aa) : h(hp), d(dd), a(aa)
    {
        double const m = oracle::integrate(
            [this](double r) { return bump(r / a) * r; }, 0, a);
        amplitude = 1 / (2 * std::numbers::pi * m);
    }

    double slice(helix::Vec2 z) const
    {
        double const p = amplitude * bump(std::hypot(z.x - d, z.y) / a);
        double const n = amplitude * bump(std::hypot(z.x + d, z.y) / a);
        return p - n;
    }

    double operator()(helix::Vec3 const& y) const
    {
        return this->slice(helix::project_to_slice(y, h).z);
    }

    double support() const { return d + a; }

    //! Polar Gauss-Legendre x trapezoid particles on each tube
    helix::VorticityParticles particles(int n_rho, int n_psi) const
    {
        std::vector<helix::Particle> ps;
        auto const rho = helix::gauss_legendre(n_rho, 0, a);
        for (double sign : {1.0, -1.0})
        {
            for (int i = 0; i < n_rho; ++i)
            {
                for (int j = 0; j < n_psi; ++j)
                {
                    double const psi = 2 * std::numbers::pi * (j + 0.5) / n_psi;
                    double const area
                        = rho.w[i] * rho.x[i] * 2 * std::numbers::pi / n_psi;
                    helix::Vec2 const z{sign * d + rho.x[i] * std::cos(psi),
                                        rho.x[i] * std::sin(psi)};
                    double const om = sign * amplitude * bump(rho.x[i] / a);
                    ps.push_back({z, om * area, area});
                }
            }
        }
        return helix::VorticityParticles(h, std::move(ps));
    }
};

//---------------------------------------------------------------------------//
}  // namespace fixture
