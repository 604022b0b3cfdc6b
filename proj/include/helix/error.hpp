//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file error.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace helix
{
//---------------------------------------------------------------------------//
/*!
 * Base error carrying a stable machine-readable code.
 */
class Error : public std::runtime_error
{
  public:
    Error(std::string code, std::string const& what)
        : std::runtime_error(what), code_(std::move(code))
    {
    }

    std::string const& code() const { return code_; }

  private:
    std::string code_;
};

//! Argument outside the domain of a function
class DomainError : public Error
{
  public:
    explicit DomainError(std::string const& what)
        : Error("domain_error", what)
    {
    }
};

//! Evaluation on a singular set (axis, diagonal, filament)
class SingularInputError : public Error
{
  public:
    explicit SingularInputError(std::string const& what)
        : Error("singular_input", what)
    {
    }
};

//! Total circulation not zero where a balanced field is required
class UnbalancedError : public Error
{
  public:
    explicit UnbalancedError(std::string const& what)
        : Error("unbalanced_vorticity", what)
    {
    }
};

//! Numerical procedure failed to reach its tolerance
class NumericalError : public Error
{
  public:
    NumericalError(std::string code, std::string const& what)
        : Error(std::move(code), what)
    {
    }
};

//! Invalid configuration or input data
class ValidationError : public Error
{
  public:
    ValidationError(std::string code, std::string const& what)
        : Error(std::move(code), what)
    {
    }
};

//! File system failure
class IoError : public Error
{
  public:
    explicit IoError(std::string const& what) : Error("io_error", what) {}
};

//---------------------------------------------------------------------------//
}  // namespace helix
