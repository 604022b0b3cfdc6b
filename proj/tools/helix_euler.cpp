//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file helix_euler.cpp
//---------------------------------------------------------------------------//
#include <iostream>

#include "helix/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return helix::run_command(args, std::cout, std::cerr);
}
