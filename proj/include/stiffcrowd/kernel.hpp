#pragma once

#include <span>
#include <vector>

#include "stiffcrowd/flux.hpp"

namespace stiffcrowd {

/// Per-line flux data for one conservative sweep. Only the active window
/// [lo, hi] (support widened by one cell) is evaluated: every face outside it
/// separates two empty cells and carries exactly zero flux.
struct LineCache {
  bool empty = true;
  int lo = 0;
  int hi = -1;
  std::vector<double> flux;       ///< F_k(rho_i), valid on [lo, hi]
  std::vector<double> abs_deriv;  ///< |F_k'(rho_i)|, valid on [lo, hi]
  std::vector<double> face_flux;  ///< scratch, size n + 1
  // Below negligible_rho, (k+1) rho^k < 1e-20 so F = rho and |F'| = 1 to the last bit.
  double k = -1.0;
  double negligible_rho = 0.0;
};

void prepare_line(std::span<const double> rho, double k, LineCache& cache);

/// Running maxima of |u_f| over the interior faces 1..n-1 from either end, so
/// faces between empty cells need not be visited every step.
struct FaceSpeedEnvelope {
  std::vector<double> prefix;  ///< prefix[f] = max_{1 <= g <= f} |u_g|, 0 for f = 0
  std::vector<double> suffix;  ///< suffix[f] = max_{f <= g <= n-1} |u_g|, 0 for f = n
};
FaceSpeedEnvelope face_speed_envelope(std::span<const double> face_u);

/// max over interior faces of |u_f| max(|F'(rho_left)|, |F'(rho_right)|); empty cells count as |F'(0)| = 1.
double line_wave_speed(const LineCache& cache, std::span<const double> face_u);
double line_wave_speed(const LineCache& cache, std::span<const double> face_u, const FaceSpeedEnvelope& env);

/// rho_i -= dt/dx (H_{i+1/2} - H_{i-1/2}) with H = u G(rho_l, rho_r) - eps (rho_r - rho_l)/dx.
/// face_u has n + 1 entries; the two boundary faces are walls.
void apply_sweep(std::span<double> rho, std::span<const double> face_u, LineCache& cache, double dt, double dx,
                 double eps, const FluxMax& sonic);

/// Backward-Euler step of rho_t = eps rho_xx with no-flux ends: (I - mu D2) rho' = rho, mu = eps dt/dx^2.
void implicit_diffusion(std::span<double> rho, double mu, std::vector<double>& scratch);

}  // namespace stiffcrowd
