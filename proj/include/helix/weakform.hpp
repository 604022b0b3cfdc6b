//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file weakform.hpp
//! Symmetrized weak vorticity formulation and its residual on particles.
//---------------------------------------------------------------------------//
#pragma once

#include <span>
#include <string>
#include <vector>

#include "biotsavart.hpp"
#include "kernel.hpp"
#include "transport.hpp"
#include "vec.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
//! Parameters of psi(t, x) = tau(t / T) beta(|x~ - c| / rho) P(x3)
struct TestFunctionSpec
{
    Vec2 centre;
    // Infinite radius gives beta == 1
    double radius = 1;
    double horizon = 1;
    // P(x3) = 1 + mode_amplitude cos(mode x3 / kappa + phase)
    int mode = 0;
    double mode_amplitude = 0;
    double phase = 0;
    double amplitude = 1;
};

/*!
 * Separable test function with closed-form derivatives.
 *
 * tau is 1 on [0, 1/4] and falls smoothly to 0 at 1; beta is the bump
 * exp(1 - 1 / (1 - s^2)) with beta(0) = 1.
 */
class TestFunction
{
  public:
    TestFunction(TestFunctionSpec const& spec, HelixParams const& h);

    // Named presets: "bump", "offset-bump", "helical-mode"
    static TestFunction preset(std::string const& name,
                               double support_radius,
                               double horizon,
                               HelixParams const& h);

    TestFunctionSpec const& spec() const { return spec_; }
    HelixParams const& h() const { return h_; }
    double horizon() const { return spec_.horizon; }
    // Largest |x~| in the support (infinite for a constant profile)
    double support_radius() const;

    double value(double t, Vec3 const& x) const;
    double time_derivative(double t, Vec3 const& x) const;
    Vec3 gradient(double t, Vec3 const& x) const;

  private:
    TestFunctionSpec spec_;
    HelixParams h_;

    double tau(double t) const;
    double tau_prime(double t) const;
    double beta(Vec2 const& d, Vec2* grad) const;
    double axial(double x3, double* deriv) const;
};

//---------------------------------------------------------------------------//
//! Smooth cutoff equal to 1 on [0, a] and 0 beyond 2a
class Cutoff
{
  public:
    explicit Cutoff(double a);
    double scale() const { return a_; }
    double operator()(double r) const;

  private:
    double a_;
};

Cutoff cutoff_phi(double delta);
Cutoff cutoff_zeta(double big_r);

//! Near-diagonal and truncation cutoffs
struct CutoffPair
{
    double delta = 0.1;
    double big_r = 20;

    // delta below a quarter period; R above 2 max(rho, 2 pi kappa)
    void validate(TestFunction const& psi, HelixParams const& h) const;
};

//---------------------------------------------------------------------------//
//! Settings of the residual quadratures
struct WeakFormConfig
{
    // Kernel, filament node rule, blob radius and threads; the blob radius
    // should match the one of the run
    VelocityEvalConfig eval_cfg;
    // Trapezoid nodes for the angle along each helix
    int theta_points = 256;
    // Trapezoid nodes along the first helix of a cutoff-weighted pair
    int near_theta_points = 64;
    // Norm exponent p > 4/3 of the analysis; sets s = p' / 2
    double p = 4;

    void validate() const;
    double s() const;
    // Expected near-part exponent (2 - s) / s
    double near_exponent() const;
};

//! Terms of the weak identity, each integrated over time
struct WeakResidual
{
    double time_term = 0;
    double nonlinear_term = 0;
    double initial_term = 0;
    double residual = 0;
    // sqrt(int |u|^2) over the particle cells of the last snapshot
    double velocity_l2 = 0;
};

//! Partition of the nonlinear term by pair cutoffs
struct SplitParts
{
    double total = 0;
    double near = 0;
    double bulk = 0;
    double far = 0;
};

struct RefinementRow
{
    double delta = 0;
    double near = 0;
    double ratio = 0;
};

struct SplittingReport
{
    SplitParts parts;
    double near_exponent = 0;
    std::vector<RefinementRow> refinement;
    double far_times_r = 0;
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//
// (1/2k) K(x-y) . (xi(y) x (grad psi(x) - grad psi(y))
//                  - (xi(x) - xi(y)) x grad psi(y))
double h_psi(double t,
             Vec3 const& x,
             Vec3 const& y,
             TestFunction const& psi,
             KernelConfig const& cfg);
// (1/2k) K(x-y) . (xi(y) x grad psi(x) - xi(x) x grad psi(y))
double h_psi_reduced(double t,
                     Vec3 const& x,
                     Vec3 const& y,
                     TestFunction const& psi,
                     KernelConfig const& cfg);

// kappa int R_t^T grad psi(S_t(z, 0)) dt over one period
Vec3 helix_gradient(double t,
                    Vec2 const& z,
                    TestFunction const& psi,
                    int theta_points);
// kappa int psi(S_t(z, 0)) dt, or its time derivative
double helix_value(double t,
                   Vec2 const& z,
                   TestFunction const& psi,
                   int theta_points,
                   bool time_derivative);

// Pair double sum sum_{j != k} gamma_j gamma_k int int H_psi at one time
double nonlinear_term(TrajectoryState const& state,
                      double t,
                      TestFunction const& psi,
                      WeakFormConfig const& cfg);

WeakResidual weak_residual(std::span<TrajectoryState const> snapshots,
                           TestFunction const& psi,
                           WeakFormConfig const& cfg);

// Parts of the nonlinear term at one time
SplitParts split_pairs(TrajectoryState const& state,
                       double t,
                       TestFunction const& psi,
                       CutoffPair const& cuts,
                       WeakFormConfig const& cfg);

// Near part alone: pair terms weighted by phi_delta(|x - y|) over the two
// helices, with the given blob radius
double near_part(TrajectoryState const& state,
                 double t,
                 TestFunction const& psi,
                 double delta,
                 double blob_epsilon,
                 WeakFormConfig const& cfg);

// Time-integrated parts plus a halving table of the near part on the
// snapshot nearest the middle of the horizon; the table uses the
// unregularized kernel
SplittingReport splitting_report(std::span<TrajectoryState const> snapshots,
                                 TestFunction const& psi,
                                 CutoffPair const& cuts,
                                 WeakFormConfig const& cfg,
                                 int refinement_levels = 3);

//---------------------------------------------------------------------------//
}  // namespace helix
