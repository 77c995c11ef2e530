#include "stiffcrowd/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace stiffcrowd {

void prepare_line(std::span<const double> rho, double k, LineCache& cache) {
  const int n = static_cast<int>(rho.size());
  int first = -1, last = -1;
  for (int i = 0; i < n; ++i)
    if (rho[i] != 0.0) {
      first = i;
      break;
    }
  if (first < 0) {
    cache.empty = true;
    cache.lo = 0;
    cache.hi = -1;
    return;
  }
  for (int i = n - 1; i >= 0; --i)
    if (rho[i] != 0.0) {
      last = i;
      break;
    }
  cache.empty = false;
  cache.lo = std::max(first - 1, 0);
  cache.hi = std::min(last + 1, n - 1);
  if (static_cast<int>(cache.flux.size()) < n) {
    cache.flux.resize(n);
    cache.abs_deriv.resize(n);
  }
  if (cache.k != k) {
    cache.k = k;
    cache.negligible_rho = std::exp((std::log(1e-20) - std::log(k + 1.0)) / k);
  }
  const double cut = cache.negligible_rho;
  for (int i = cache.lo; i <= cache.hi; ++i) {
    const double r = std::clamp(rho[i], 0.0, 1.0);
    if (r < cut) {
      cache.flux[i] = r;
      cache.abs_deriv[i] = 1.0;
      continue;
    }
    const double p = pow_k(r, k);
    cache.flux[i] = r * (1.0 - p);
    cache.abs_deriv[i] = std::abs(1.0 - (k + 1.0) * p);
  }
}

double line_wave_speed(const LineCache& cache, std::span<const double> face_u) {
  const int n = static_cast<int>(face_u.size()) - 1;
  auto deriv = [&](int i) { return (cache.empty || i < cache.lo || i > cache.hi) ? 1.0 : cache.abs_deriv[i]; };
  double speed = 0.0;
  for (int f = 1; f < n; ++f) speed = std::max(speed, std::abs(face_u[f]) * std::max(deriv(f - 1), deriv(f)));
  return speed;
}

FaceSpeedEnvelope face_speed_envelope(std::span<const double> face_u) {
  const int n = static_cast<int>(face_u.size()) - 1;
  FaceSpeedEnvelope env;
  env.prefix.assign(n + 1, 0.0);
  env.suffix.assign(n + 1, 0.0);
  for (int f = 1; f < n; ++f) env.prefix[f] = std::max(env.prefix[f - 1], std::abs(face_u[f]));
  if (n >= 1) env.prefix[n] = env.prefix[n - 1];
  for (int f = n - 1; f >= 1; --f) env.suffix[f] = std::max(env.suffix[f + 1], std::abs(face_u[f]));
  env.suffix[0] = n >= 1 ? env.suffix[std::min(1, n)] : 0.0;
  return env;
}

double line_wave_speed(const LineCache& cache, std::span<const double> face_u, const FaceSpeedEnvelope& env) {
  const int n = static_cast<int>(face_u.size()) - 1;
  if (cache.empty) return env.prefix[n];
  // Faces up to lo and from hi + 1 on touch only empty cells.
  double speed = std::max(env.prefix[cache.lo], env.suffix[cache.hi + 1]);
  for (int f = std::max(cache.lo + 1, 1); f <= std::min(cache.hi, n - 1); ++f)
    speed = std::max(speed, std::abs(face_u[f]) * std::max(cache.abs_deriv[f - 1], cache.abs_deriv[f]));
  return speed;
}

void apply_sweep(std::span<double> rho, std::span<const double> face_u, LineCache& cache, double dt, double dx,
                 double eps, const FluxMax& sonic) {
  if (cache.empty) return;
  const int n = static_cast<int>(rho.size());
  if (static_cast<int>(cache.face_flux.size()) < n + 1) cache.face_flux.resize(n + 1);
  auto& h = cache.face_flux;
  const int lo = cache.lo, hi = cache.hi;
  h[lo] = 0.0;
  h[hi + 1] = 0.0;
  const double diff = eps / dx;
  for (int f = lo + 1; f <= hi; ++f) {
    const double rl = rho[f - 1], rr = rho[f];
    double flux = godunov_flux_cached(rl, rr, cache.flux[f - 1], cache.flux[f], face_u[f], sonic.rho_star, sonic.f_max);
    if (eps > 0.0) flux -= diff * (rr - rl);
    h[f] = flux;
  }
  const double lambda = dt / dx;
  for (int i = lo; i <= hi; ++i) rho[i] -= lambda * (h[i + 1] - h[i]);
}

void implicit_diffusion(std::span<double> rho, double mu, std::vector<double>& scratch) {
  const int n = static_cast<int>(rho.size());
  if (mu <= 0.0 || n == 0) return;
  scratch.resize(n);
  auto& c = scratch;  // modified super-diagonal
  // Thomas algorithm; rows 0 and n-1 carry the no-flux closure (diagonal 1 + mu).
  double diag = 1.0 + mu;
  c[0] = -mu / diag;
  rho[0] /= diag;
  for (int i = 1; i < n; ++i) {
    const double d = (i == n - 1 ? 1.0 + mu : 1.0 + 2.0 * mu) + mu * c[i - 1];
    c[i] = -mu / d;
    rho[i] = (rho[i] + mu * rho[i - 1]) / d;
  }
  for (int i = n - 2; i >= 0; --i) rho[i] -= c[i] * rho[i + 1];
}

}  // namespace stiffcrowd
