#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "stiffcrowd/grid.hpp"
#include "stiffcrowd/velocity.hpp"

namespace stiffcrowd {

/// p = rho^k per cell.
Field1D pressure(const Field1D& rho, double k);
Field2D pressure(const Field2D& rho, double k);

double mass(const Field1D& field);
double mass(const Field2D& field);

/// 1D: sum |rho_{i+1} - rho_i|. 2D: anisotropic form sum |dx rho| dy + |dy rho| dx.
double total_variation(const Field1D& field);
double total_variation(const Field2D& field);

/// max over cells of rho^k (1 - rho). Never exceeds law_of_state_bound(k) for rho in [0,1].
double law_of_state_residual(std::span<const double> rho, double k);
inline double law_of_state_residual(const Field1D& f, double k) {
  return law_of_state_residual(std::span<const double>(f.values.data(), f.values.size()), k);
}
inline double law_of_state_residual(const Field2D& f, double k) {
  return law_of_state_residual(std::span<const double>(f.values.data(), f.values.size()), k);
}
inline double law_of_state_bound(double k) { return 1.0 / (k + 1.0); }

/// Gronwall envelope e^{beta t} (tv0 + beta t) for the total variation.
inline double tv_envelope(double tv0, double beta, double t);

/// Discrete Kruzhkov entropy residual of one explicit step for the constant c:
///
///   R_i = (|rho'_i - c| - |rho_i - c|)/dt + (Q_{i+1/2} - Q_{i-1/2})/dx + F_k(c) sgn(rho_i - c) U'(x_i)
///
/// where Q is the numerical entropy flux of the scheme's own Godunov solver,
/// Q = u [G(a v c, b v c) - G(a ^ c, b ^ c)] - eps (|b - c| - |a - c|)/dx.
struct KruzhkovReport {
  Eigen::VectorXd residual;
  double positive_part = 0.0;  ///< sum of (R_i)_+ dx
};
KruzhkovReport kruzhkov_residual(const Snapshot1D& before, const Snapshot1D& after, const Velocity1D& u, double c);

/// 21 equispaced constants 0, 0.05, ..., 1.
std::vector<double> kruzhkov_lattice(int points = 21);
/// max over the lattice of kruzhkov_residual(...).positive_part.
double kruzhkov_max_positive(const Snapshot1D& before, const Snapshot1D& after, const Velocity1D& u,
                             std::span<const double> lattice);

/// Discrete residual of the inequality satisfied by q = rho^n:
///
///   q_t + d_x[q - n(k+1)/(n+k) rho^{n+k}] U + n (q - rho^{n+k}) U' - eps q_xx <= 0
///
/// centered in space, forward in time, evaluated on interior cells. n = 1 is
/// the conservation law itself; n = k is the pressure equation.
struct PressureResidualReport {
  Eigen::VectorXd residual;
  double positive_l1 = 0.0;
  double l1 = 0.0;
  double max_positive = 0.0;
};
PressureResidualReport pressure_evolution_residual(const Snapshot1D& before, const Snapshot1D& after,
                                                   const Velocity1D& u, double n);

/// Cells with rho >= threshold, grouped into maximal runs.
struct SaturatedSet1D {
  std::vector<char> saturated;
  std::vector<std::pair<int, int>> components;  ///< inclusive [first, last], sorted
  std::vector<int> frontal_cells;               ///< component end cells whose outward normal has n.U > 0
};
SaturatedSet1D saturated_set(const Field1D& rho, const Velocity1D& u, double threshold);

/// 4-connected saturated components on a 2D grid.
struct SaturatedSet2D {
  std::vector<char> saturated;
  std::vector<int> component;  ///< component id per cell, -1 if unsaturated
  int n_components = 0;
  std::vector<int> boundary_cells;
  std::vector<int> frontal_cells;
};
SaturatedSet2D saturated_set(const Field2D& rho, const Velocity2D& u, double threshold);

/// max |div((1 - p) U)| (centered) over saturated cells at least two cells
/// from the edge of their component. Throws EmptySaturatedSet when there are none.
double complementarity_residual(const Field1D& rho, const Field1D& p, const Velocity1D& u, double threshold);
double complementarity_residual(const Field2D& rho, const Field2D& p, const Velocity2D& u, double threshold);

/// max p over frontal boundary cells (0 when no boundary cell is frontal).
/// Throws EmptySaturatedSet when nothing is saturated.
double frontal_pressure_trace(const Field1D& rho, const Field1D& p, const Velocity1D& u, double threshold);
double frontal_pressure_trace(const Field2D& rho, const Field2D& p, const Velocity2D& u, double threshold);

/// Position where the profile crosses `level`, linearly interpolated between
/// cell centers; the first crossing with center in [x_lo, x_hi] is returned.
double level_crossing(const Field1D& field, double level, double x_lo, double x_hi);

/// Rightmost position where the profile drops through `level`, i.e. the front
/// of the rightmost region above it. Throws LevelNotBracketed if there is none.
double front_position(const Field1D& field, double level);

struct ShockTrack {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> window_speed;  ///< least-squares slope over each sliding window
  double speed = 0.0;                ///< least-squares slope over all points
};
ShockTrack shock_tracker(std::span<const Snapshot1D> trajectory, double level, double x_lo, double x_hi,
                         int window = 5, double t_min = 0.0);

/// One row of a run's diagnostic table. Quantities that do not apply are NaN.
struct DiagnosticRecord {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  double t = 0.0;
  double mass = 0.0;
  double tv = 0.0;
  double tv_envelope = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double law_of_state = 0.0;
  double kruzhkov_positive = kNaN;
  double pressure_positive = kNaN;
  double complementarity = kNaN;
  double frontal_trace = kNaN;
  int components = 0;
};

class DiagnosticSeries {
 public:
  /// Throws InvalidArgument unless timestamps increase strictly.
  void append(const DiagnosticRecord& r);
  const std::vector<DiagnosticRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  const DiagnosticRecord& back() const { return records_.back(); }

 private:
  std::vector<DiagnosticRecord> records_;
};

/// Column names in write order, space separated.
const char* diagnostic_columns();
void write_series(std::ostream& os, const DiagnosticSeries& series);

/// Snapshot-level diagnostics for a 1D run. `previous` is the state one step
/// before `snap` (same run), or null at t = 0.
DiagnosticRecord diagnose(const Snapshot1D& snap, const Snapshot1D* previous, const Velocity1D& u,
                          double sat_threshold, double tv0);
DiagnosticRecord diagnose(const Snapshot2D& snap, const Velocity2D& u, double sat_threshold, double tv0);

inline double tv_envelope(double tv0, double beta, double t) { return std::exp(beta * t) * (tv0 + beta * t); }

}  // namespace stiffcrowd
