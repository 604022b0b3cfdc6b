//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file parallel.cpp
//---------------------------------------------------------------------------//
#include "helix/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace helix
{
//---------------------------------------------------------------------------//
void parallel_for(std::size_t n,
                  int threads,
                  std::function<void(std::size_t, std::size_t)> const& fn)
{
    std::size_t const workers
        = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(n, 1));
    if (workers <= 1)
    {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex lock;
    std::size_t const chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w)
    {
        std::size_t const begin = std::min(n, w * chunk);
        std::size_t const end = std::min(n, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try
            {
                fn(begin, end);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> guard(lock);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

//---------------------------------------------------------------------------//
}  // namespace helix
