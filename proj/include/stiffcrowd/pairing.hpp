#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stiffcrowd/grid.hpp"
#include "stiffcrowd/velocity.hpp"

namespace stiffcrowd {

/// Standard bump b(s) = exp(1 - 1/(1 - s^2)) on |s| < 1, peak value 1.
double bump(double s);
double bump_deriv(double s);

/// Tensor test function phi(t, x) = b((t - tc)/rt) b((x - xc)/rx), nonnegative and smooth.
struct Bump {
  double tc = 0.0, rt = 1.0;
  double xc = 0.0, rx = 1.0;

  double value(double t, double x) const;
  double dt(double t, double x) const;
  double dx(double t, double x) const;
  /// Spatial factor only, for pairings at a fixed time.
  double space(double x) const { return bump((x - xc) / rx); }
  double space_dx(double x) const { return bump_deriv((x - xc) / rx) / rx; }
};

/// nt x nx centers on [t0, t1] x [x0, x1], each bump covering the neighbouring centers.
std::vector<Bump> bump_lattice(double t0, double t1, int nt, double x0, double x1, int nx);
/// Spatial-only lattice (tc = 0, rt irrelevant).
std::vector<Bump> bump_lattice_x(double x0, double x1, int nx);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int n);

struct PairingReport {
  std::vector<double> values;  ///< one pairing per test function
  double max_positive = 0.0;   ///< max(0, max pairing)
  double max_abs = 0.0;
};

/// A limit state at one instant: rho and p are smooth on each interval between
/// consecutive breakpoints (and outside the outermost ones).
struct LimitProfile {
  std::vector<double> breaks;
  std::function<double(double)> rho;
  std::function<double(double)> p;
};
using ProfileSampler = std::function<LimitProfile(double t)>;

/// Pairs the limit Kruzhkov inequality
///
///   d_t |rho - c| + d_x [(|rho - c| - sgn(rho - c) p) U] + c sgn(rho - c) U' <= 0
///
/// against each test function, i.e. the integral of
/// -|rho - c| phi_t - (|rho - c| - sgn(rho - c) p) U phi_x + c sgn(rho - c) U' phi,
/// which must be <= 0. Space integrals are split at the profile breakpoints
/// and time integrals at `time_breaks`.
PairingReport limit_entropy_residual(const ProfileSampler& state, std::span<const double> time_breaks,
                                     const Velocity1D& u, double c, std::span<const Bump> tests);

/// Same pairing for a sampled finite-volume trajectory: midpoint rule in space,
/// trapezoid rule over the snapshot times, with p = rho^k.
struct FieldSample {
  double t;
  const Field1D* rho;
  const Field1D* p;
};
PairingReport limit_entropy_residual(std::span<const FieldSample> trajectory, const Velocity1D& u, double c,
                                     std::span<const Bump> tests);

/// Pairs -p' U + (1_{rho >= threshold} - p) U' <= 0 at one instant, with the
/// derivative moved onto the test function: integral of p U phi' + 1_sat U' phi.
PairingReport limit_pressure_inequality(const LimitProfile& state, const Velocity1D& u, double sat_threshold,
                                        std::span<const Bump> tests);
PairingReport limit_pressure_inequality(const Field1D& rho, const Field1D& p, const Velocity1D& u,
                                        double sat_threshold, std::span<const Bump> tests);

}  // namespace stiffcrowd
