#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stiffcrowd/scenario.hpp"

namespace stiffcrowd {

/// Lists of values to sweep; an empty axis keeps the scenario's value.
struct SweepAxes {
  std::vector<double> k;
  std::vector<double> eps;
  std::vector<int> nx;

  size_t points() const;
};

struct RunManifest {
  std::uint64_t hash = 0;  ///< FNV-1a of the normalized config text
  SolverKind solver = SolverKind::FV1D;
  std::string out_dir = "out";
  SweepAxes sweep;
  int jobs = 1;
  size_t cap = 64;          ///< largest allowed sweep product
  double compare_k = 256;   ///< stiffness of the finite-volume side in compare mode
};

struct ParsedConfig {
  Scenario scenario;
  RunManifest manifest;
};

/// Parses `key = value` lines (`#` starts a comment). `block = a b value` and
/// `box = x0 x1 y0 y1 value` may repeat; `sweep.k`, `sweep.eps`, `sweep.nx`
/// take comma or space separated lists. Unknown keys and malformed values
/// throw ParseError with the line number; the result is validated
/// (ValidationError names the key).
ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config(const std::string& path);

/// Scenario for one sweep point.
Scenario sweep_point(const Scenario& base, const SweepAxes& axes, size_t index);

std::uint64_t fnv1a(const std::string& text);

}  // namespace stiffcrowd
