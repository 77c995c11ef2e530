#include "stiffcrowd/flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

namespace {

double checked_density(double rho) {
  if (!(rho >= -kDensityTol && rho <= 1.0 + kDensityTol))
    throw Error(ErrorKind::DomainError, "density " + std::to_string(rho) + " outside [0,1]");
  return std::clamp(rho, 0.0, 1.0);
}

void check_k(double k) {
  if (!(std::isfinite(k) && k >= 1.0)) throw Error(ErrorKind::InvalidArgument, "stiffness k must be finite and >= 1");
}

}  // namespace

FluxParams::FluxParams(double stiffness) : k(stiffness) { check_k(k); }

double flux_value(double rho, double k) {
  const double r = checked_density(rho);
  return r * (1.0 - pow_k(r, k));
}

double flux_deriv(double rho, double k) {
  const double r = checked_density(rho);
  return 1.0 - (k + 1.0) * pow_k(r, k);
}

FluxMax flux_argmax(double k) {
  check_k(k);
  const double rho_star = std::exp(-std::log(k + 1.0) / k);
  // rho_star^k = 1/(k+1) exactly, so F_k(rho_star) = rho_star k/(k+1).
  return {rho_star, rho_star * k / (k + 1.0)};
}

double flux_deriv_inverse(double xi, double k) {
  check_k(k);
  if (!(xi >= -k && xi <= 1.0))
    throw Error(ErrorKind::RangeError, "xi = " + std::to_string(xi) + " outside [-k, 1]");
  const double base = (1.0 - xi) / (k + 1.0);
  if (base <= 0.0) return 0.0;
  return std::min(1.0, std::exp(std::log(base) / k));
}

double flux_deriv_inverse_bisect(double xi, double k) {
  check_k(k);
  if (!(xi >= -k && xi <= 1.0))
    throw Error(ErrorKind::RangeError, "xi = " + std::to_string(xi) + " outside [-k, 1]");
  // F_k' decreases from 1 at rho=0 to -k at rho=1.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - (k + 1.0) * pow_k(mid, k) > xi)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double godunov_interface_flux(double rho_l, double rho_r, double u, double k) {
  const double l = checked_density(rho_l);
  const double r = checked_density(rho_r);
  const FluxMax m = flux_argmax(k);
  return godunov_flux_cached(l, r, flux_value(l, k), flux_value(r, k), u, m.rho_star, m.f_max);
}

double rankine_hugoniot_speed(double rho_minus, double rho_plus, double k, double u) {
  const double a = checked_density(rho_minus);
  const double b = checked_density(rho_plus);
  if (a == b) return flux_deriv(a, k) * u;
  return (flux_value(b, k) - flux_value(a, k)) / (b - a) * u;
}

double saturated_rear_speed(double rho_minus, double k, double u) {
  const double a = checked_density(rho_minus);
  if (a >= 1.0) return -k * u;
  return -flux_value(a, k) / (1.0 - a) * u;
}

RiemannFan riemann_exact(double rho_minus, double rho_plus, double k, double u) {
  check_k(k);
  if (u == 0.0 || !std::isfinite(u)) throw Error(ErrorKind::InvalidArgument, "Riemann solver needs a nonzero finite u");
  RiemannFan fan;
  fan.rho_minus = checked_density(rho_minus);
  fan.rho_plus = checked_density(rho_plus);
  fan.k = k;
  fan.u = u;
  fan.left = u > 0.0 ? fan.rho_minus : fan.rho_plus;
  fan.right = u > 0.0 ? fan.rho_plus : fan.rho_minus;
  if (fan.left == fan.right) {
    fan.kind = RiemannFan::Kind::Constant;
    return fan;
  }
  if (fan.left < fan.right) {
    fan.kind = RiemannFan::Kind::Shock;
    fan.shock_xi = (flux_value(fan.right, k) - flux_value(fan.left, k)) / (fan.right - fan.left);
    fan.speed = fan.shock_xi * u;
  } else {
    fan.kind = RiemannFan::Kind::Rarefaction;
    fan.xi_minus = flux_deriv(fan.left, k);
    fan.xi_plus = flux_deriv(fan.right, k);
  }
  return fan;
}

double sample(const RiemannFan& fan, double xi) {
  switch (fan.kind) {
    case RiemannFan::Kind::Constant: return fan.left;
    case RiemannFan::Kind::Shock: return xi < fan.shock_xi ? fan.left : fan.right;
    case RiemannFan::Kind::Rarefaction:
      if (xi <= fan.xi_minus) return fan.left;
      if (xi >= fan.xi_plus) return fan.right;
      return flux_deriv_inverse(xi, fan.k);
  }
  return fan.left;
}

double sample_xt(const RiemannFan& fan, double x, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "sample_xt needs t > 0");
  return sample(fan, x / (fan.u * t));
}

}  // namespace stiffcrowd
