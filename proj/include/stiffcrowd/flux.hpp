#pragma once

#include <algorithm>
#include <cmath>

namespace stiffcrowd {

/// rho^k evaluated as exp(k log rho) with rho clamped to [1e-300, 1]; 0^k = 0.
/// For integer k <= 1024 and rho >= 0.6 (where nothing can underflow) repeated
/// squaring is used instead; it agrees to a few hundred ulps and is about
/// twice as fast in the solver loops.
inline double pow_k(double rho, double k) {
  if (rho <= 0.0) return 0.0;
  if (rho >= 1.0) return 1.0;
  if (rho >= 0.6 && k <= 1024.0) {
    const auto n = static_cast<unsigned>(k);
    if (static_cast<double>(n) == k) {
      double result = 1.0, base = rho;
      for (unsigned e = n; e != 0; e >>= 1) {
        if (e & 1u) result *= base;
        base *= base;
      }
      return result;
    }
  }
  return std::exp(k * std::log(std::max(rho, 1e-300)));
}

/// Stiffness parameter of F_k(rho) = rho (1 - rho^k). Finite, k >= 1.
struct FluxParams {
  double k = 1.0;
  explicit FluxParams(double stiffness);
};

/// Tolerance outside [0,1] within which densities are clamped instead of rejected.
inline constexpr double kDensityTol = 1e-12;

double flux_value(double rho, double k);
double flux_deriv(double rho, double k);

struct FluxMax {
  double rho_star;  ///< (k+1)^(-1/k), the sonic point
  double f_max;     ///< F_k(rho_star) = rho_star k / (k+1)
};
FluxMax flux_argmax(double k);

/// Closed-form inverse of F_k' on [-k, 1]: ((1 - xi) / (k + 1))^(1/k).
double flux_deriv_inverse(double xi, double k);
/// Same inverse by bisection on the monotone map rho -> F_k'(rho), to 1e-14.
double flux_deriv_inverse_bisect(double xi, double k);

/// Exact Godunov flux of u F_k(rho) for states (rho_l, rho_r) across a face
/// with frozen signed normal velocity u.
double godunov_interface_flux(double rho_l, double rho_r, double u, double k);

/// Same flux when F_k at both states is already known; `f_max` is F_k(rho_star).
inline double godunov_flux_cached(double rho_l, double rho_r, double f_l, double f_r, double u, double rho_star,
                                  double f_max) {
  // u >= 0: min of the concave F over [l, r] if l <= r, max over [r, l] otherwise.
  // u < 0: u F is convex, so the two cases swap.
  const bool rising = rho_l <= rho_r;
  const bool take_min = (u >= 0.0) == rising;
  double g;
  if (take_min) {
    g = f_l < f_r ? f_l : f_r;
  } else {
    const double lo = rising ? rho_l : rho_r;
    const double hi = rising ? rho_r : rho_l;
    if (rho_star > lo && rho_star < hi)
      g = f_max;
    else
      g = f_l > f_r ? f_l : f_r;
  }
  return u * g;
}

/// Rankine-Hugoniot speed [F_k]/[rho] * u of a jump rho_minus | rho_plus.
double rankine_hugoniot_speed(double rho_minus, double rho_plus, double k, double u);
/// Speed of the rear of a jam (rho_plus = 1) behind which the density is rho_minus.
double saturated_rear_speed(double rho_minus, double k, double u);

/// Entropy solution of the Riemann problem for rho_t + u F_k(rho)_x = 0.
///
/// The fan is self-similar in xi = x / (u t). For u < 0 the problem is the
/// mirror image of one with speed |u|, so `left`/`right` below are stored in
/// that effective orientation and shock/rarefaction classification follows
/// it. `speed` is the physical shock speed dx/dt.
struct RiemannFan {
  enum class Kind { Constant, Shock, Rarefaction };

  Kind kind = Kind::Constant;
  double rho_minus = 0.0;  ///< physical state for x < 0
  double rho_plus = 0.0;   ///< physical state for x > 0
  double k = 1.0;
  double u = 1.0;
  double left = 0.0;   ///< effective left state in xi
  double right = 0.0;  ///< effective right state in xi
  double shock_xi = 0.0;  ///< [F]/[rho] of the effective states (Shock)
  double speed = 0.0;     ///< physical shock speed (Shock)
  double xi_minus = 0.0;  ///< F_k'(left) (Rarefaction)
  double xi_plus = 0.0;   ///< F_k'(right) (Rarefaction)
};

/// Throws InvalidArgument for u == 0 and DomainError for states outside [0,1].
/// Equal states give a Constant fan.
RiemannFan riemann_exact(double rho_minus, double rho_plus, double k, double u);
/// Entropy solution at xi = x / (u t).
double sample(const RiemannFan& fan, double xi);
/// Entropy solution at (x, t), t > 0.
double sample_xt(const RiemannFan& fan, double x, double t);

}  // namespace stiffcrowd
