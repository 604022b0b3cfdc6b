//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bench_kernel.cpp
//! Times both kernel paths against |x~| to choose the switch radius.
//---------------------------------------------------------------------------//
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "helix/kernel.hpp"

using namespace helix;

int main()
{
    KernelConfig cfg;
    KernelEvaluator ev(cfg);
    int const reps = 20000;
    std::printf("%8s %12s %12s\n", "r/kappa", "series_ns", "images_ns");
    for (double r : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 12.0})
    {
        double sink = 0;
        auto time = [&](auto&& f) {
            auto t0 = std::chrono::steady_clock::now();
            for (int i = 0; i < reps; ++i)
            {
                double const a = 2 * std::numbers::pi * i / reps;
                Vec3 const x{r * std::cos(a), r * std::sin(a),
                             std::numbers::pi * std::sin(7.1 * a)};
                sink += f(x).x;
            }
            auto t1 = std::chrono::steady_clock::now();
            return std::chrono::duration<double, std::nano>(t1 - t0).count()
                   / reps;
        };
        double const ts = time([&](Vec3 x) { return ev.kernel_series(x); });
        double const ti = time([&](Vec3 x) { return ev.kernel_images(x); });
        std::printf("%8.2f %12.1f %12.1f %s\n", r, ts, ti, sink == 0.5 ? "!" : "");
    }
    return 0;
}
