//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bessel.hpp
//! Modified Bessel functions of the second kind, orders zero and one.
//---------------------------------------------------------------------------//
#pragma once

namespace helix
{
//---------------------------------------------------------------------------//
/*!
 * Accuracy contract of the K0/K1 implementation.
 *
 * Beyond \c upper the unscaled functions underflow to zero; the scaled
 * variants remain accurate for any positive argument.
 */
struct BesselAccuracy
{
    double max_relative_error = 1e-12;
    double lower = 1e-6;
    double upper = 700;
};

//! Scaled pair e^t K0(t), e^t K1(t)
struct BesselPair
{
    double k0 = 0;
    double k1 = 0;
};

// Both scaled functions from one evaluation
BesselPair k01e(double t);

double k0(double t);
double k1(double t);
double k0e(double t);
double k1e(double t);

//---------------------------------------------------------------------------//
}  // namespace helix
