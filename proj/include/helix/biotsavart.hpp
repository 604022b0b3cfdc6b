//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file biotsavart.hpp
//! Velocity recovery from helical scalar vorticity.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "kernel.hpp"
#include "vec.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
//! Slice particle: helical filament through (z, 0) with circulation gamma
struct Particle
{
    Vec2 z;
    double gamma = 0;
    double area = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Particle discretization of a helical scalar vorticity.
 *
 * Circulations are omega * area. The cached total circulation is computed
 * with a fixed-order compensated sum and refreshed on every mutation.
 */
class VorticityParticles
{
  public:
    VorticityParticles() = default;
    VorticityParticles(HelixParams h, std::vector<Particle> particles);

    HelixParams const& h() const { return h_; }
    std::span<Particle const> particles() const { return particles_; }
    std::size_t size() const { return particles_.size(); }
    bool empty() const { return particles_.empty(); }
    Particle const& operator[](std::size_t i) const { return particles_[i]; }

    double total_circulation() const { return total_; }
    double absolute_circulation() const { return absolute_; }
    bool balanced() const;

    // Replace the positions, keeping circulations and areas
    void set_positions(std::span<Vec2 const> z);

  private:
    HelixParams h_{1.0};
    std::vector<Particle> particles_;
    double total_ = 0;
    double absolute_ = 0;

    void refresh();
};

//---------------------------------------------------------------------------//
/*!
 * Smooth radial profile amplitude * b((r - mid) / half) supported in
 * (r_inner, r_outer), with b(t) = exp(-1 / (1 - t^2)).
 */
class RadialProfile
{
  public:
    RadialProfile(double r_inner, double r_outer, double amplitude);

    double r_inner() const { return r_inner_; }
    double r_outer() const { return r_outer_; }
    double amplitude() const { return amplitude_; }

    double operator()(double r) const;
    // int_0^r phi(s) s ds by fixed Gauss-Legendre panels
    double cumulative(double r) const;
    // int_0^inf phi(r) r dr
    double weighted_integral() const { return total_; }

    // Profile with the same support scaled so 2 pi int phi r dr == mass
    static RadialProfile with_mass(double r_inner, double r_outer, double mass);

  private:
    double r_inner_;
    double r_outer_;
    double amplitude_;
    double total_ = 0;
};

//---------------------------------------------------------------------------//
//! Radial steady flow induced by a profile
class SteadyBackground
{
  public:
    SteadyBackground(RadialProfile profile, HelixParams h);

    RadialProfile const& profile() const { return profile_; }
    HelixParams const& h() const { return h_; }
    // Asymptotic axial speed |int phi r dr| / kappa
    double beta() const;

  private:
    RadialProfile profile_;
    HelixParams h_;
};

//---------------------------------------------------------------------------//
/*!
 * Filament quadrature settings.
 *
 * The trapezoid rule in theta starts at theta_quadrature_points and doubles
 * per source filament until N >= ln(1/tolerance) lambda / d, with lambda
 * the helix speed and d the regularized closest approach. The blob radius
 * here is the one applied; the kernel config's value is ignored.
 */
struct VelocityEvalConfig
{
    int theta_quadrature_points = 64;
    int max_theta_points = 1 << 15;
    double tolerance = 1e-10;
    KernelConfig kernel_cfg;
    double blob_epsilon = 0;
    int threads = 1;

    void validate() const;
};

//---------------------------------------------------------------------------//
/*!
 * Integral of K(x - S_t(z,0)) x xi(S_t(z,0)) over one period in t.
 *
 * This is the velocity at x of a unit-circulation helical filament through
 * (z, 0), using the blob radius and node rule of the config.
 */
class FilamentIntegrator
{
  public:
    FilamentIntegrator(VelocityEvalConfig const& cfg, HelixParams const& h);

    Vec3 operator()(Vec3 const& x, Vec2 const& z) const;

    // Velocities at (a, 0) from b and at (b, 0) from a, sharing kernel values
    std::pair<Vec3, Vec3> pair(Vec2 const& a, Vec2 const& b) const;

    // Distance from x to the helix through (z, 0)
    double closest_approach(Vec3 const& x, Vec2 const& z) const;

    // Trapezoid node count used for this target and source
    int nodes(Vec3 const& x, Vec2 const& z) const;

  private:
    KernelEvaluator ev_;
    double kappa_;
    double period_;
    double eps_;
    int n0_;
    int nmax_;
    double log_tol_;

    int nodes(double distance, double lambda) const;
};

//---------------------------------------------------------------------------//
//! Quadrature value with its refinement error estimate
struct OracleResult
{
    Vec3 value;
    double error_estimate = 0;
};

/*!
 * Settings of the three-dimensional reference quadrature.
 *
 * Levels scale every node count by 1.5; the result is accepted when two
 * successive levels differ by at most tolerance times the integral of the
 * absolute integrand.
 */
struct OracleConfig
{
    double tolerance = 1e-6;
    int min_level = 1;
    int max_level = 4;
    // Feature size of omega; sets the base resolution
    double feature = 0.1;
};

using ScalarField = std::function<double(Vec3 const&)>;

//---------------------------------------------------------------------------//
//! Least-squares decay fit of |u| over |x~| in [4R, 32R]
struct DecayFit
{
    double exponent = 0;
    double support_radius = 0;
    std::vector<double> radii;
    std::vector<double> magnitudes;
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

Vec3 velocity_filament(Vec3 const& x,
                       VorticityParticles const& w,
                       VelocityEvalConfig const& cfg);

// Velocities at many targets; identical for any thread count
std::vector<Vec3> velocity_filament(std::span<Vec3 const> targets,
                                    VorticityParticles const& w,
                                    VelocityEvalConfig const& cfg);

// Velocity at each particle's slice point, optionally without its own
// filament
std::vector<Vec3> velocity_at_particles(VorticityParticles const& w,
                                        VelocityEvalConfig const& cfg,
                                        bool exclude_self);

OracleResult velocity_oracle_3d(Vec3 const& x,
                                ScalarField const& omega,
                                double support_radius,
                                VelocityEvalConfig const& cfg,
                                OracleConfig const& ocfg = {});

Vec3 background_velocity(Vec3 const& x, SteadyBackground const& bg);

// Balanced part (particles minus profile, subtracted analytically) plus ubar
Vec3 xi_operator(Vec3 const& x,
                 VorticityParticles const& w,
                 SteadyBackground const& bg,
                 VelocityEvalConfig const& cfg);

// Xi velocity at each particle's slice point
std::vector<Vec3> xi_at_particles(VorticityParticles const& w,
                                  SteadyBackground const& bg,
                                  VelocityEvalConfig const& cfg,
                                  bool exclude_self);
double decay_exponent(VorticityParticles const& w,
                      VelocityEvalConfig const& cfg,
                      DecayFit* fit = nullptr);

// Decay fit of an arbitrary sampler with support radius R
DecayFit fit_decay(VelocitySampler const& field, double support_radius);

// Largest |z_j| (zero for an empty set)
double particle_support_radius(VorticityParticles const& w);

//---------------------------------------------------------------------------//
}  // namespace helix
