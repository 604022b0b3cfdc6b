//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file cli.hpp
//! Command-line front end.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helix
{
//---------------------------------------------------------------------------//
//! Process exit codes
enum ExitCode : int
{
    exit_ok = 0,
    exit_internal = 1,
    exit_validation = 2,
    exit_io = 3,
    exit_numerical = 4
};

/*!
 * Run one command.
 *
 * args excludes the program name. Errors are written to err as a single
 * JSON line {"error": {"code": ..., "message": ...}}.
 */
int run_command(std::vector<std::string> const& args,
                std::ostream& out,
                std::ostream& err);

//---------------------------------------------------------------------------//
}  // namespace helix
