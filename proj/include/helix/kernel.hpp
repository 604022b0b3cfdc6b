//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernel.hpp
//! Periodic Green's function and the Biot-Savart kernel K = grad G / 4 pi^2.
//---------------------------------------------------------------------------//
#pragma once

#include <numbers>
#include <utility>

#include "geometry.hpp"
#include "vec.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
//! Which closed form produced a kernel value
enum class Representation
{
    bessel_series,
    image_sum
};

//! Coefficients of G = A sum_n K0(n r/k) cos(n x3/k) - B ln r
enum class Normalization
{
    consistent,  //!< A = 2/k, B = 1/k: Laplacian of G is -4 pi^2 delta
    literal  //!< A = B = 1/(2 pi k^2)
};

//! How the image sums beyond the explicit pairs are closed
enum class ImageTail
{
    multipole,  //!< exact Hurwitz-zeta multipole expansion
    integral  //!< midpoint Euler-Maclaurin comparison integral
};

char const* to_string(Representation r);
char const* to_string(Normalization n);
char const* to_string(ImageTail t);

//---------------------------------------------------------------------------//
/*!
 * Truncation and evaluation settings for the kernel.
 *
 * \c series_truncation caps the Bessel series; the number of terms actually
 * used is adaptive. \c image_truncation is the number of image pairs summed
 * explicitly before the tail closure. A zero \c switch_radius selects
 * default_switch_factor * kappa.
 */
struct KernelConfig
{
    static constexpr double default_switch_factor = 10.0;

    HelixParams h{1.0};
    int series_truncation = 4000;
    int image_truncation = 3;
    double switch_radius = 0;
    double euler_gamma = std::numbers::egamma;
    double blob_epsilon = 0;
    Normalization normalization = Normalization::consistent;
    ImageTail image_tail = ImageTail::multipole;

    // Throw ValidationError on an invalid field
    void validate() const;

    double effective_switch_radius() const;
    double series_coefficient() const;
    double log_coefficient() const;
};

//! Kernel vector and the path that produced it
struct KernelValue
{
    Vec3 value;
    Representation representation_used = Representation::image_sum;
};

//---------------------------------------------------------------------------//
/*!
 * Evaluator for G and K with precomputed constants.
 *
 * All methods reduce x3 into the fundamental period before evaluating.
 */
class KernelEvaluator
{
  public:
    explicit KernelEvaluator(KernelConfig const& cfg);

    KernelConfig const& config() const { return cfg_; }

    double green_series(Vec3 x) const;
    double green_images(Vec3 x) const;

    // Kernel on the path selected by the switch radius
    KernelValue kernel(Vec3 x) const;
    Vec3 kernel_series(Vec3 x) const;
    Vec3 kernel_images(Vec3 x) const;

    // Part K2 = (B / 4 pi^2) (x~, 0) / |x~|^2 of the split K = K1 - K2
    Vec3 kernel_far(Vec3 x) const;

    // Kernel with Gaussian blob core of radius eps, defined everywhere
    Vec3 kernel_blob(Vec3 x, double eps) const;

    // Number of explicit image pairs used at this point
    int image_pairs(Vec3 x) const;

  private:
    KernelConfig cfg_;
    double kappa_;
    double period_;
    double switch_;
    double coef_a_;
    double coef_b_;
    double green_const_;

    Vec3 images_impl(Vec3 x, double eps) const;
    std::pair<int, ImageTail> select_tail(Vec3 const& x) const;
    double reduce(double x3) const;
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

// Representative of x3 in (-pi kappa, pi kappa]
double reduce_period(double x3, HelixParams const& h);

double green_series(Vec3 const& x, KernelConfig const& cfg);
double green_images(Vec3 const& x, KernelConfig const& cfg);
KernelValue biot_savart_kernel(Vec3 const& x, KernelConfig const& cfg);

// |K(x)| / (1/|x|^2 + 1/|x~|)
double kernel_bound_ratio(Vec3 const& x, KernelConfig const& cfg);

// Hurwitz zeta sum_{k>=0} (a+k)^{-s} for s > 1, a >= 1
double hurwitz_zeta(double s, double a);

//---------------------------------------------------------------------------//
}  // namespace helix
