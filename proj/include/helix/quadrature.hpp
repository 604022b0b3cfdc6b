//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file quadrature.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

namespace helix
{
//---------------------------------------------------------------------------//
//! Nodes and weights of a one-dimensional rule
struct QuadratureRule
{
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule mapped to [a, b]
QuadratureRule gauss_legendre(int n, double a, double b);

// Smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between
double smooth_step(double t);
double smooth_step_derivative(double t);

//---------------------------------------------------------------------------//
}  // namespace helix
