#pragma once

#include <limits>
#include <vector>

#include "stiffcrowd/diagnostics.hpp"
#include "stiffcrowd/kernel.hpp"
#include "stiffcrowd/scenario.hpp"

namespace stiffcrowd {

struct StepControl {
  double cfl = 0.45;  ///< in (0, 0.5]
  double dt_max = std::numeric_limits<double>::infinity();
  DiffusionMode diffusion = DiffusionMode::Explicit;
};

/// Values within this distance of zero are tolerated in the two guard cells at each end.
inline constexpr double kGuardTol = 1e-12;

/// State of one explicit finite-volume integration of
/// rho_t + (F_k(rho) U)_x = eps rho_xx on a truncated line.
struct SolverState1D {
  Field1D field;
  double t = 0.0;
  long step_count = 0;
  double k = 1.0;
  double eps = 0.0;
  Eigen::VectorXd face_velocity;  ///< U at the n + 1 faces; faces 0 and n are walls

  SolverState1D(Field1D initial, const Velocity1D& u, double k, double eps);

  Snapshot1D snapshot() const { return {t, k, eps, field}; }

  // Derived from face_velocity and scratch reused across steps; not part of the logical state.
  FaceSpeedEnvelope speed_envelope;
  LineCache cache;
  std::vector<double> scratch;
};

/// Locally attained wave speed max_f |u_f| max(|F'(rho_l)|, |F'(rho_r)|).
double max_wave_speed(const SolverState1D& state);

/// dt allowed by the CFL condition alone (infinite when nothing moves).
double stable_dt(const SolverState1D& state, const StepControl& control);

/// Advances by one step of size min(stable_dt, dt_max, t_stop - t) and returns it.
/// Throws DomainOverflow when mass reaches the guard band, NonFiniteValue on NaN/Inf.
double step(SolverState1D& state, const StepControl& control,
            double t_stop = std::numeric_limits<double>::infinity());

/// Advances by exactly dt without consulting the CFL bound.
void advance(SolverState1D& state, double dt, DiffusionMode mode = DiffusionMode::Explicit);

struct Run1DResult {
  std::vector<Snapshot1D> snapshots;  ///< one per output time
  DiagnosticSeries diagnostics;
  long steps = 0;
};

struct RunOptions {
  bool diagnostics = true;
};

/// Integrates a 1D scenario to T, recording a snapshot and a diagnostic row at
/// each output time. Deterministic for a given scenario.
Run1DResult run(const Scenario& scenario, const RunOptions& options = {});

/// Checks the two guard cells at each end and finiteness of the active window.
void check_state(const Field1D& field, double t);

}  // namespace stiffcrowd
