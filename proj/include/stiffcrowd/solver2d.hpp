#pragma once

#include <vector>

#include "stiffcrowd/solver1d.hpp"

namespace stiffcrowd {

/// Dimensionally split integrator for rho_t + div(F_k(rho) U) = eps Laplace(rho).
struct SolverState2D {
  Field2D field;
  double t = 0.0;
  long step_count = 0;
  double k = 1.0;
  double eps = 0.0;
  /// x-normal velocity at faces (f, j): index j * (nx + 1) + f.
  std::vector<double> face_ux;
  /// y-normal velocity at faces (i, f): index i * (ny + 1) + f.
  std::vector<double> face_uy;

  SolverState2D(Field2D initial, const Velocity2D& u, double k, double eps);

  Snapshot2D snapshot() const { return {t, k, eps, field}; }
};

/// Smallest of the two per-axis CFL time steps.
double stable_dt(const SolverState2D& state, const StepControl& control);

/// One Strang step X(dt/2) Y(dt) X(dt/2) with dt = min(stable_dt, dt_max, t_stop - t).
/// A line whose own CFL number would exceed 1/2 inside a substep is subcycled.
double step2d(SolverState2D& state, const StepControl& control,
              double t_stop = std::numeric_limits<double>::infinity());

void check_state(const Field2D& field, double t);

struct Run2DResult {
  std::vector<Snapshot2D> snapshots;
  DiagnosticSeries diagnostics;
  long steps = 0;
};

Run2DResult run2d(const Scenario& scenario, const RunOptions& options = {});

}  // namespace stiffcrowd
