#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/flux.hpp"

using namespace stiffcrowd;

namespace {

double F(double r, double k) { return r * (1.0 - std::pow(r, k)); }

// Brute-force extremum of F over [a, b] on a fine grid.
double brute(double a, double b, double k, bool minimum) {
  const int n = 1000000;
  double best = F(a, k);
  for (int i = 0; i <= n; ++i) {
    const double v = F(a + (b - a) * i / n, k);
    best = minimum ? std::min(best, v) : std::max(best, v);
  }
  return best;
}

}  // namespace

TEST_CASE("flux values") {
  CHECK(flux_value(0.5, 1) == doctest::Approx(0.25));
  for (double k : {1.0, 4.0, 256.0}) CHECK(flux_value(1.0, k) == 0.0);
  CHECK(flux_value(0.63, 3) == doctest::Approx(0.63 * (1 - 0.63 * 0.63 * 0.63)));
  CHECK(flux_deriv(0.0, 7) == 1.0);
  CHECK(flux_deriv(1.0, 7) == -7.0);
  CHECK(flux_deriv(0.5, 1) == 0.0);
}

TEST_CASE("out-of-range densities are rejected, tiny overshoots clamped") {
  CHECK_THROWS_AS(flux_value(1.1, 2), Error);
  CHECK_THROWS_AS(flux_value(-0.01, 2), Error);
  CHECK(flux_value(1.0 + 1e-13, 2) == 0.0);
  CHECK_THROWS_AS(FluxParams(0.5), Error);
}

TEST_CASE("sonic point") {
  auto m = flux_argmax(1);
  CHECK(m.rho_star == doctest::Approx(0.5));
  CHECK(m.f_max == doctest::Approx(0.25));
  m = flux_argmax(3);
  CHECK(m.rho_star == doctest::Approx(std::pow(4.0, -1.0 / 3.0)));
  CHECK(m.f_max == doctest::Approx(F(m.rho_star, 3)).epsilon(1e-13));
  m = flux_argmax(1e4);
  CHECK(m.rho_star > 0.999);
  CHECK(m.f_max == doctest::Approx(m.rho_star * 1e4 / (1e4 + 1)));
  for (double k : {1.0, 2.0, 8.0, 64.0}) CHECK(brute(0, 1, k, false) == doctest::Approx(flux_argmax(k).f_max));
}

TEST_CASE("Godunov flux against brute-force extrema") {
  CHECK(godunov_interface_flux(0.2, 0.8, 1, 1) == doctest::Approx(0.16));
  CHECK(godunov_interface_flux(0.9, 0.1, 1, 1) == doctest::Approx(0.25));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  for (int n = 0; n < 6; ++n) {
    const double a = r01(rng), b = r01(rng), k = 1 + 7 * r01(rng);
    const double lo = std::min(a, b), hi = std::max(a, b);
    // u > 0: min over [a, b] when a <= b, max otherwise; u < 0 swaps.
    const double pos = brute(lo, hi, k, a <= b);
    const double neg = brute(lo, hi, k, a > b);
    CHECK(godunov_interface_flux(a, b, 2.0, k) == doctest::Approx(2.0 * pos).epsilon(1e-9));
    CHECK(godunov_interface_flux(a, b, -0.5, k) == doctest::Approx(-0.5 * neg).epsilon(1e-9));
  }
}

TEST_CASE("Godunov flux consistency") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const double r = r01(rng), k = 1 + 100 * r01(rng), u = 4 * r01(rng) - 2;
    CHECK(godunov_interface_flux(r, r, u, k) == doctest::Approx(u * flux_value(r, k)).epsilon(1e-14));
  }
}

TEST_CASE("pow_k fast path agrees with exp/log") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> r(0.6, 1.0);
  for (int k : {1, 2, 3, 8, 64, 255, 256, 1000}) {
    for (int n = 0; n < 200; ++n) {
      const double x = r(rng);
      const double ref = std::exp(k * std::log(x));
      CHECK(pow_k(x, k) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK(pow_k(0.0, 3) == 0.0);
  CHECK(pow_k(1.0, 3.5) == 1.0);
  CHECK(pow_k(0.3, 2.5) == doctest::Approx(std::pow(0.3, 2.5)));
}

TEST_CASE("inverse of F'") {
  for (double k : {1.0, 3.0, 64.0}) {
    CHECK(flux_deriv_inverse(1.0, k) == 0.0);
    CHECK(flux_deriv_inverse(-k, k) == doctest::Approx(1.0));
  }
  CHECK(flux_deriv_inverse(0.0, 1) == doctest::Approx(0.5));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  for (int n = 0; n < 100; ++n) {
    const double k = 1 + 50 * r01(rng), xi = 1 - (k + 1) * r01(rng);
    CHECK(flux_deriv_inverse(xi, k) == doctest::Approx(flux_deriv_inverse_bisect(xi, k)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(flux_deriv_inverse(1.5, 2), Error);
}

TEST_CASE("Riemann fans") {
  auto fan = riemann_exact(0.1, 0.6, 1, 1);
  CHECK(fan.kind == RiemannFan::Kind::Shock);
  CHECK(fan.speed == doctest::Approx((0.24 - 0.09) / 0.5));
  CHECK(sample_xt(fan, 0.29, 1.0) == 0.1);
  CHECK(sample_xt(fan, 0.31, 1.0) == 0.6);

  fan = riemann_exact(0.0, 1.0, 16, 1);
  CHECK(fan.kind == RiemannFan::Kind::Shock);
  CHECK(fan.speed == doctest::Approx(0.0));

  fan = riemann_exact(1.0, 0.25, 4, 1);
  REQUIRE(fan.kind == RiemannFan::Kind::Rarefaction);
  CHECK(fan.xi_minus == doctest::Approx(-4));
  for (double c : {0.3, 0.5, 0.9}) CHECK(sample(fan, flux_deriv(c, 4)) == doctest::Approx(c));

  fan = riemann_exact(0.4, 0.4, 4, 1);
  CHECK(fan.kind == RiemannFan::Kind::Constant);
  CHECK_THROWS_AS(riemann_exact(0.1, 0.2, 1, 0.0), Error);

  // Negative u mirrors the problem: a jump-down becomes a shock.
  fan = riemann_exact(0.6, 0.1, 1, -1);
  CHECK(fan.kind == RiemannFan::Kind::Shock);
  CHECK(fan.speed == doctest::Approx(-0.3));
}

TEST_CASE("shock speeds") {
  CHECK(rankine_hugoniot_speed(0.1, 0.6, 1, 1) == doctest::Approx(0.3));
  CHECK(saturated_rear_speed(0.5, 1, 1) == doctest::Approx(-0.5));
  CHECK(rankine_hugoniot_speed(0.0, 1.0, 9, 1) == doctest::Approx(0.0));
}
