//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io.cpp
//---------------------------------------------------------------------------//
#include "helix/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helix/error.hpp"

namespace helix
{
namespace
{
//---------------------------------------------------------------------------//
std::vector<std::string> split_line(std::string const& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

double parse_double(std::string const& s)
{
    char* end = nullptr;
    errno = 0;
    double const v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ValidationError("invalid_csv", "not a number: '" + s + "'");
    return v;
}

}  // namespace

//---------------------------------------------------------------------------//
std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

//---------------------------------------------------------------------------//
CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header))
{
}

void CsvTable::add_row(std::span<double const> values)
{
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(format_double(v));
    this->add_row(cells);
}

void CsvTable::add_row(std::initializer_list<double> values)
{
    this->add_row(std::span<double const>(values.begin(), values.size()));
}

void CsvTable::add_row(std::vector<std::string> const& cells)
{
    if (cells.size() != header_.size())
        throw ValidationError("invalid_csv", "row width differs from header");
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i)
            body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
    ++rows_;
}

std::string CsvTable::str() const
{
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i)
    {
        if (i)
            out += ',';
        out += header_[i];
    }
    out += '\n';
    return out + body_;
}

CsvData parse_csv(std::string const& text)
{
    CsvData out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = split_line(line);
        if (first)
        {
            out.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != out.header.size())
            throw ValidationError("invalid_csv",
                                  "row width differs from header");
        out.rows.push_back(std::move(cells));
    }
    if (first)
        throw ValidationError("invalid_csv", "missing header line");
    return out;
}

//---------------------------------------------------------------------------//
std::string read_text_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("read failed on '" + path.string() + "'");
    return ss.str();
}

void write_text_file(std::filesystem::path const& path, std::string const& text)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("write failed on '" + path.string() + "'");
}

//---------------------------------------------------------------------------//
std::string snapshot_csv(VorticityParticles const& w)
{
    CsvTable t({"j", "z1", "z2", "gamma", "area"});
    for (std::size_t j = 0; j < w.size(); ++j)
    {
        auto const& p = w[j];
        t.add_row({std::to_string(j),
                   format_double(p.z.x),
                   format_double(p.z.y),
                   format_double(p.gamma),
                   format_double(p.area)});
    }
    return t.str();
}

VorticityParticles parse_snapshot_csv(std::string const& text,
                                      HelixParams const& h)
{
    auto const csv = parse_csv(text);
    if (csv.header
        != std::vector<std::string>{"j", "z1", "z2", "gamma", "area"})
        throw ValidationError("invalid_csv",
                              "snapshot header must be j,z1,z2,gamma,area");
    std::vector<Particle> ps;
    ps.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r)
    {
        auto const& row = csv.rows[r];
        if (row[0] != std::to_string(r))
            throw ValidationError("invalid_csv",
                                  "snapshot rows must be numbered 0, 1, ...");
        ps.push_back({{parse_double(row[1]), parse_double(row[2])},
                      parse_double(row[3]),
                      parse_double(row[4])});
    }
    return VorticityParticles(h, std::move(ps));
}

//---------------------------------------------------------------------------//
std::uint64_t SplitMix64::operator()(std::uint64_t counter) const
{
    std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform(std::uint64_t counter) const
{
    return static_cast<double>((*this)(counter) >> 11) * 0x1.0p-53;
}

//---------------------------------------------------------------------------//
}  // namespace helix
