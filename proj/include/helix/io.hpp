//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io.hpp
//! CSV and file helpers with bit-stable number formatting.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "biotsavart.hpp"

namespace helix
{
//---------------------------------------------------------------------------//
// printf "%.17g"; reads back bitwise with strtod
std::string format_double(double v);

/*!
 * Comma-separated table with a fixed header.
 *
 * Rows must match the header width. Cells are numbers formatted with
 * format_double or verbatim strings.
 */
class CsvTable
{
  public:
    explicit CsvTable(std::vector<std::string> header);

    std::vector<std::string> const& header() const { return header_; }
    std::size_t rows() const { return rows_; }

    void add_row(std::span<double const> values);
    void add_row(std::initializer_list<double> values);
    void add_row(std::vector<std::string> const& cells);

    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::string body_;
    std::size_t rows_ = 0;
};

//! Parsed CSV with a header line
struct CsvData
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvData parse_csv(std::string const& text);

//---------------------------------------------------------------------------//
// Files; failures throw IoError
std::string read_text_file(std::filesystem::path const& path);
void write_text_file(std::filesystem::path const& path, std::string const& text);

// Snapshot columns j,z1,z2,gamma,area
std::string snapshot_csv(VorticityParticles const& w);
VorticityParticles parse_snapshot_csv(std::string const& text,
                                      HelixParams const& h);

//---------------------------------------------------------------------------//
/*!
 * Counter-based SplitMix64.
 *
 * Value i is mix(seed + (i + 1) * 0x9E3779B97F4A7C15) with the SplitMix64
 * finalizer; uniform(i) keeps the top 53 bits, scaled into [0, 1).
 */
class SplitMix64
{
  public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t operator()(std::uint64_t counter) const;
    double uniform(std::uint64_t counter) const;

  private:
    std::uint64_t seed_;
};

//---------------------------------------------------------------------------//
}  // namespace helix
