#pragma once

#include <limits>
#include <string>
#include <vector>

#include "stiffcrowd/grid.hpp"
#include "stiffcrowd/initial.hpp"
#include "stiffcrowd/velocity.hpp"

namespace stiffcrowd {

enum class SolverKind { FV1D, FV2D, FrontTrack, FTL };
enum class DiffusionMode { Explicit, SplittingImplicit };

const char* to_string(SolverKind kind);
const char* to_string(DiffusionMode mode);

/// Closed-form velocity family plus its parameters. Which parameters are read
/// depends on `family`: constant (a | ux, uy), affine (a, b), tanh (a, b, x0,
/// width), radial (cx, cy, lambda).
struct VelocitySpec {
  std::string family = "constant";
  double a = 1.0;
  double b = 0.0;
  double x0 = 0.0;
  double width = 1.0;
  double ux = 1.0;
  double uy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double lambda = 1.0;
};

/// Full description of one experiment. Config keys map one-to-one onto these fields.
struct Scenario {
  SolverKind solver = SolverKind::FV1D;

  double x_min = -1.0, x_max = 1.0;
  int nx = 200;
  double y_min = -1.0, y_max = 1.0;
  int ny = 200;

  VelocitySpec velocity;
  std::vector<InitialInterval> intervals;
  std::vector<InitialBox> boxes;

  double k = 1.0;
  double eps = 0.0;
  double cfl = 0.45;
  double T = 1.0;
  double output_dt = 0.1;
  double sat_threshold = 0.99;
  double dt_max = std::numeric_limits<double>::infinity();
  DiffusionMode diffusion = DiffusionMode::Explicit;

  // Front tracking: ambient density behind every block, RK4 step hint.
  double ambient = 0.0;
  double track_dt = 1e-3;
  // Follow-the-leader: number of agents and fixed RK4 step (0 picks one from the CFL-like bound).
  int agents = 1000;
  double ftl_dt = 0.0;

  int dimension() const { return solver == SolverKind::FV2D ? 2 : 1; }

  /// Throws ValidationError naming the offending key.
  void validate() const;

  Grid1D grid1d() const;
  Grid2D grid2d() const;
  Velocity1D velocity1d() const;
  Velocity2D velocity2d() const;
  /// Output times 0, output_dt, 2 output_dt, ..., T (T always included).
  std::vector<double> output_times() const;
};

}  // namespace stiffcrowd
