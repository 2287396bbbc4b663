#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "semisep/semiseparable.hpp"

namespace semisep {

// Text formats. All floating-point values are written with std::to_chars
// (shortest round-trip form), so write -> read is bit-exact and a fixed seed
// produces byte-identical files.
//
// Problem file:
//
//   # comment lines and blank lines are ignored
//   n 4
//   p 2
//   d 3.5
//   alpha 1.25,1.25
//   beta 0.5,2
//   t
//   0.5
//   1
//   2.25
//   7
//
// "n", "p", "d", "alpha", "beta" may appear in any order but must all
// precede the "t" marker; the t block (one value per line, n lines) ends the
// file. Vector files (right-hand sides, solutions) are just one value per
// line with the same comment rules.
//
// Readers throw ParseError carrying the offending 1-based line number.

std::string format_double(double v);

ExponentialKernelSpec read_problem(std::istream& in);
ExponentialKernelSpec read_problem_file(const std::string& path);
void write_problem(std::ostream& out, const ExponentialKernelSpec& s);
void write_problem_file(const std::string& path, const ExponentialKernelSpec& s);

std::vector<double> read_vector(std::istream& in);
std::vector<double> read_vector_file(const std::string& path);
void write_vector(std::ostream& out, std::span<const double> v);
void write_vector_file(const std::string& path, std::span<const double> v);

} // namespace semisep
