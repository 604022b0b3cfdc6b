//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file parallel.hpp
//! Deterministic data-parallel map and compensated summation.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "vec.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
/*!
 * Run fn(begin, end) over contiguous blocks of [0, n).
 *
 * Each index is processed by exactly one worker and workers never share
 * accumulators, so results do not depend on the thread count.
 */
void parallel_for(std::size_t n,
                  int threads,
                  std::function<void(std::size_t, std::size_t)> const& fn);

//---------------------------------------------------------------------------//
//! Neumaier compensated accumulator
class CompensatedSum
{
  public:
    void add(double v)
    {
        double const t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

//! Componentwise compensated accumulator for vectors
class CompensatedVec3
{
  public:
    void add(Vec3 const& v)
    {
        x_.add(v.x);
        y_.add(v.y);
        z_.add(v.z);
    }
    Vec3 value() const { return {x_.value(), y_.value(), z_.value()}; }

  private:
    CompensatedSum x_, y_, z_;
};

//---------------------------------------------------------------------------//
}  // namespace helix
