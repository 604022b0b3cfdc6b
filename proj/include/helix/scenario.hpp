//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file scenario.hpp
//! Scenario files: JSON input of the command-line tool.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biotsavart.hpp"
#include "kernel.hpp"
#include "transport.hpp"
#include "weakform.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
//! Named initial data: disc-patch, dipole, ring, radial-steady, tracer
struct InitialSpec
{
    std::string preset = "dipole";
    double amplitude = 10;
    // Disc radius (disc-patch, dipole) and half distance of the dipole
    double radius = 0.25;
    double half_separation = 0.5;
    // Annulus of the ring preset
    double r_inner = 0.5;
    double r_outer = 1.0;
    int mollifier_n = 8;
    double spacing = 0.1;
    RadialSteadySpec radial;
    // Zero-circulation particle carried by the background
    double tracer_radius = 0.75;
};

//! Steady background; the mass defaults to the particle circulation
struct BackgroundSpec
{
    double r_inner = 0.5;
    double r_outer = 1.0;
    std::optional<double> mass;
};

struct GridAxis
{
    double lo = 0;
    double hi = 0;
    int n = 1;

    double at(int i) const;
};

struct KernelTableSpec
{
    GridAxis x1{0.05, 2.0, 8};
    GridAxis x2{0.0, 0.0, 1};
    GridAxis x3{-3.0, 3.0, 7};
};

//! Seeded points with |x~| log-uniform in [r_min, r_max] kappa
struct KernelVerifySpec
{
    int points = 1000;
    double r_min = 0.05;
    double r_max = 10;
    double tolerance = 1e-8;
};

//! Probes: explicit points, or seeded points with |x~| in [r_min, r_max]
//! (zero bounds select 1.25 and 3 times the particle support radius)
struct VelocityProbeSpec
{
    int points = 20;
    std::vector<Vec3> probes;
    double r_min = 0;
    double r_max = 0;
    double fd_step = 1e-4;
};

//! Test function choice; a zero horizon selects the run length
struct TestFunctionChoice
{
    std::string preset = "helical-mode";
    double support_radius = 1.2;
    double horizon = 0;
};

struct WeakformCheckSpec
{
    // Output directory of a simulate run
    std::string snapshots;
    TestFunctionChoice psi;
    CutoffPair cuts;
    double p = 4;
    int theta_points = 256;
    int near_theta_points = 64;
    int refinement_levels = 3;
};

//---------------------------------------------------------------------------//
/*!
 * Validated scenario.
 *
 * Every block has defaults; a file only needs the keys it changes.
 */
struct Scenario
{
    static constexpr int schema_version = 1;
    static constexpr double default_blob_epsilon = 0.05;

    std::string kind;
    double kappa = 1;
    KernelConfig kernel;
    VelocityEvalConfig velocity;
    InitialSpec initial;
    std::optional<BackgroundSpec> background;
    SimulationConfig simulate;
    std::optional<TestFunctionChoice> simulate_weak;
    KernelTableSpec kernel_table;
    KernelVerifySpec kernel_verify;
    VelocityProbeSpec velocity_probe;
    WeakformCheckSpec weakform_check;

    HelixParams h() const { return HelixParams(kappa); }
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//
// Parse and validate JSON text for a command; overrides are "a.b=value"
// with a JSON or bare string value, and "preset=..." for initial.preset
Scenario load_scenario(std::string const& text,
                       std::string const& command,
                       std::vector<std::string> const& overrides = {});

// Initial particles (and grid quartets for mollified presets)
TrajectoryState initial_state(Scenario const& sc,
                              std::vector<Quartet>* quartets = nullptr);

TestFunction make_test_function(TestFunctionChoice const& c,
                                double run_length,
                                HelixParams const& h);

//---------------------------------------------------------------------------//
}  // namespace helix
