#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stiffcrowd/config.hpp"

namespace stiffcrowd {

/// Outcome of one run. `ok` is false when the run threw or broke an invariant.
struct PointResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> failures;
  std::string summary_json;  ///< the machine-readable summary written next to the artifacts
  // Headline numbers for trend files (NaN when not applicable).
  double k = 0.0, eps = 0.0;
  int nx = 0;
  double mass_drift = 0.0;
  double complementarity = 0.0;
  double frontal_trace = 0.0;
  double tv = 0.0;
};

/// Runs one scenario with its own solver and writes snapshots, diagnostics and
/// summary.json into `dir`.
PointResult run_point(const Scenario& scenario, const std::filesystem::path& dir, const std::string& name = "run");

/// One subdirectory per sweep point, executed on up to `jobs` threads, plus a
/// trend.txt table and summary.json at the top. Returns the process exit code:
/// 0 if every point passed its invariants, 1 otherwise.
int run_sweep(const ParsedConfig& config, const std::filesystem::path& out, int jobs);

/// Front tracking against a finite-volume run at stiffness manifest.compare_k
/// on the same data; writes compare.json with the maximal front-position
/// error and the merge-time discrepancy.
struct CompareReport {
  double max_front_error = 0.0;
  double merge_time_track = -1.0;  ///< -1 when no merge happens before T
  double merge_time_fv = -1.0;
  std::string json;
};
CompareReport run_compare(const ParsedConfig& config, const std::filesystem::path& out);

}  // namespace stiffcrowd
