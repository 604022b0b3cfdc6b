//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file transport.hpp
//! Vortex particle transport on the slice x3 = 0.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "biotsavart.hpp"
#include "geometry.hpp"
#include "vec.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
/*!
 * Bump mollifier rho_n(z) = n^2 rho(n z) in the slice variables.
 *
 * rho(z) = c exp(-1 / (1 - |z|^2)) on the unit disc with unit mass.
 */
class MollifierSpec
{
  public:
    explicit MollifierSpec(int n = 8);

    int n() const { return n_; }
    double radius() const { return 1.0 / n_; }

    double operator()(Vec2 const& z) const { return radial(norm(z)); }
    double radial(double r) const;

    // Constant c giving unit mass on the unit disc
    static double normalization();

  private:
    int n_;
};

//---------------------------------------------------------------------------//
//! Uniform disc of vorticity
struct DiscComponent
{
    Vec2 centre;
    double radius = 0;
    double amplitude = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Piecewise-constant slice vorticity as a signed sum of uniform discs.
 *
 * The mollified field is evaluated per disc by a one-dimensional radial
 * integral of rho_n against the arc length of each circle inside the disc.
 */
class SliceField
{
  public:
    SliceField() = default;
    explicit SliceField(std::vector<DiscComponent> discs);

    std::span<DiscComponent const> discs() const { return discs_; }
    double operator()(Vec2 const& z) const;
    // Integral over the slice
    double mass() const;
    // Largest |z| in the support
    double support_radius() const;
    double mollified(Vec2 const& z, MollifierSpec const& m) const;

  private:
    std::vector<DiscComponent> discs_;
};

// Named initial data
SliceField disc_patch(double radius, double amplitude);
// Discs of amplitude +a at (d, 0) and -a at (-d, 0)
SliceField dipole(double half_separation, double radius, double amplitude);
// Annulus r_inner < |z| < r_outer
SliceField ring(double r_inner, double r_outer, double amplitude);

//---------------------------------------------------------------------------//
//! Centre particle with aligned positive and negative rings, balanced
struct RadialSteadySpec
{
    int ring_particles = 32;
    double r_inner = 0.5;
    double r_outer = 1.0;
    double centre_gamma = 0.5;
    double inner_gamma = 1.0;
};

VorticityParticles radial_steady(HelixParams const& h,
                                 RadialSteadySpec const& spec = {});

//---------------------------------------------------------------------------//
// Particles at the centres (i + 1/2) spacing of a square grid where the
// mollified field is nonzero, with gamma = value * spacing^2
VorticityParticles mollify_initial(SliceField const& omega0,
                                   MollifierSpec const& m,
                                   double spacing,
                                   HelixParams const& h);

//! Indices of four grid neighbours in counterclockwise order
using Quartet = std::array<std::size_t, 4>;

// Complete grid cells of a particle set created by mollify_initial
std::vector<Quartet> grid_quartets(VorticityParticles const& w, double spacing);
double quartet_area(VorticityParticles const& w, Quartet const& q);

//---------------------------------------------------------------------------//
enum class Integrator
{
    rk4,
    euler
};

char const* to_string(Integrator i);

/*!
 * Fixed-step time integration settings.
 *
 * A step whose largest displacement exceeds max_displacement_factor times
 * the blob radius is redone as two half steps, at most max_halvings deep.
 */
struct SimulationConfig
{
    double dt = 0.01;
    double t_end = 1;
    Integrator integrator = Integrator::rk4;
    bool reproject_each_step = true;
    VelocityEvalConfig eval_cfg;
    int diagnostics_every = 1;
    double lp_exponent = 1.5;
    double max_displacement_factor = 10;
    int max_halvings = 4;
    // Number of sampled particles for the helicality diagnostic
    int helicality_samples = 4;

    void validate() const;
    int steps() const;
    int snapshots() const;
};

//---------------------------------------------------------------------------//
/*!
 * Particles at time t.
 *
 * Without re-projection, heights holds x3 of each particle, whose position
 * is then S_{x3/kappa}(z, 0). A background is added to the particle field
 * when the particles are balanced; otherwise the particles are advanced
 * with the Xi velocity for that profile.
 */
struct TrajectoryState
{
    double t = 0;
    VorticityParticles particles;
    std::optional<SteadyBackground> background;
    std::vector<double> heights;
};

//! Diagnostics of one snapshot
struct DiagnosticsRecord
{
    double t = 0;
    double l1 = 0;
    double l2 = 0;
    double lp = 0;
    double linf = 0;
    double total_circulation = 0;
    double support_radius = 0;
    // |u . xi| / (max(|u|, max_j |u_j|) |xi|) on a ring outside the support
    double max_swirl = 0;
    // |u(S_t x) - R_t u(x)| / max |u| at sampled particles
    double max_helicality = 0;
    double area_distortion = 0;
    double area_distortion_mean = 0;
};

struct DiagnosticsReport
{
    double p = 1.5;
    std::vector<DiagnosticsRecord> records;
    // Bitwise comparisons against the first record
    bool circulation_constant = true;
    bool linf_constant = true;
    bool lp_constant = true;
    int large_displacement_steps = 0;
    int halved_steps = 0;
};

//! Final state, diagnostics and snapshots of a run
struct RunResult
{
    TrajectoryState final_state;
    DiagnosticsReport report;
    std::vector<TrajectoryState> snapshots;
};

//! Exponential envelope R0 exp(rate t) fitted on the first half of a run
struct GronwallEnvelope
{
    double r0 = 0;
    double rate = 0;
    double max_ratio = 0;
    bool within = true;
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//
// Velocity at each particle's current position
std::vector<Vec3> state_velocities(TrajectoryState const& state,
                                   VelocityEvalConfig const& cfg);
// Velocity at an arbitrary point
Vec3 state_velocity(Vec3 const& x,
                    TrajectoryState const& state,
                    VelocityEvalConfig const& cfg);

TrajectoryState step(TrajectoryState const& state, SimulationConfig const& cfg);
RunResult run(TrajectoryState const& initial,
              SimulationConfig const& cfg,
              std::span<Quartet const> quartets = {});

double support_radius(TrajectoryState const& state);
DiagnosticsReport conservation_report(std::span<TrajectoryState const> series,
                                      double p);
//! Relative change of the quartet areas
struct AreaDistortion
{
    // Largest |A(t) / A(0) - 1|
    double max = 0;
    // Mean weighted by the quartet's summed |gamma|
    double weighted_mean = 0;
};

AreaDistortion area_distortion(VorticityParticles const& initial,
                               VorticityParticles const& current,
                               std::span<Quartet const> quartets);
// Envelope check: the rate is the largest log(R/R0)/t on the first half;
// the second half must stay under R0 exp(2 rate t)
GronwallEnvelope gronwall_envelope(std::span<double const> t,
                                   std::span<double const> radius);

//---------------------------------------------------------------------------//
}  // namespace helix
