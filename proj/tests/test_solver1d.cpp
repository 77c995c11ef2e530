#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/initial.hpp"
#include "stiffcrowd/kernel.hpp"
#include "stiffcrowd/solver1d.hpp"

using namespace stiffcrowd;

namespace {

Field1D field_from(const Grid1D& g, std::vector<InitialInterval> pieces) { return build_initial(pieces, g); }

std::vector<double> faces_of(const Grid1D& g, const Velocity1D& u) {
  std::vector<double> f(g.n_cells + 1);
  for (int i = 0; i <= g.n_cells; ++i) f[i] = u.eval(g.face(i));
  return f;
}

}  // namespace

TEST_CASE("wave speed uses local states") {
  const int n = 20;
  std::vector<double> u(n + 1, 1.0);
  LineCache cache;
  std::vector<double> rho(n, 0.0);
  prepare_line(rho, 4, cache);
  CHECK(line_wave_speed(cache, u) == 1.0);

  std::fill(rho.begin(), rho.end(), 1.0);
  prepare_line(rho, 7, cache);
  CHECK(line_wave_speed(cache, u) == doctest::Approx(7.0));

  std::fill(rho.begin(), rho.end(), 0.5);
  prepare_line(rho, 1, cache);
  CHECK(line_wave_speed(cache, u) == doctest::Approx(0.0));
}

TEST_CASE("envelope wave speed equals the full scan") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  std::uniform_int_distribution<int> pos(0, 199);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 200;
    std::vector<double> rho(n, 0.0), u(n + 1);
    for (auto& v : u) v = 4.0 * r01(rng) - 2.0;
    int a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    if (trial % 7 != 0)
      for (int i = a; i <= b; ++i) rho[i] = r01(rng) < 0.2 ? 0.0 : r01(rng);
    const double k = 1 + 100 * r01(rng);
    LineCache cache;
    prepare_line(rho, k, cache);
    const auto env = face_speed_envelope(u);
    CHECK(line_wave_speed(cache, u, env) == line_wave_speed(cache, u));
  }
}

TEST_CASE("negligible densities take the exact fast path") {
  const double k = 64;
  std::vector<double> rho = {0.0, 1e-9, 0.3, 0.6, 0.9, 1e-3, 0.0};
  LineCache cache;
  prepare_line(rho, k, cache);
  for (int i = cache.lo; i <= cache.hi; ++i) {
    const double p = pow_k(rho[i], k);
    CHECK(cache.flux[i] == rho[i] * (1.0 - p));
    CHECK(cache.abs_deriv[i] == std::abs(1.0 - (k + 1.0) * p));
  }
}

TEST_CASE("constant states are steady") {
  const int n = 50;
  std::vector<double> rho(n, 0.37), u(n + 1, 1.0);
  u.front() = u.back() = 0.0;
  LineCache cache;
  prepare_line(rho, 3, cache);
  apply_sweep(rho, u, cache, 0.001, 0.01, 0.0, flux_argmax(3));
  // Walls block the end faces, so only cells next to them may change.
  for (int i = 1; i < n - 1; ++i) CHECK(rho[i] == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("a saturated plateau does not move inside") {
  const Grid1D g(-1, 1, 100);
  const auto u = Velocity1D::affine(2.0, -1.0, -1, 1);
  auto f = field_from(g, {{-0.5, 0.5, 1.0}});
  auto faces = faces_of(g, u);
  std::vector<double> rho(f.values.data(), f.values.data() + g.n_cells);
  const auto before = rho;
  LineCache cache;
  prepare_line(rho, 16, cache);
  apply_sweep(rho, faces, cache, 1e-3, g.dx, 0.0, flux_argmax(16));
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.center(i);
    if (x > -0.48 && x < 0.48) CHECK(rho[i] == before[i]);
  }
}

TEST_CASE("one Godunov step across an entropic shock") {
  const Grid1D g(-1.6, 2.4, 1000);
  const auto u = Velocity1D::constant(1.0, g.x_min, g.x_max);
  SolverState1D s(field_from(g, {{-1, 0, 0.1}, {0, 1, 0.6}}), u, 1, 0.0);
  const int j = static_cast<int>(std::lround((0.0 - g.x_min) / g.dx));  // first cell right of 0
  const double before = s.field.values[j];
  const double dt = step(s, StepControl{});
  const double sigma = (0.6 * 0.4 - 0.1 * 0.9) / 0.5;
  CHECK((s.field.values[j] - before) * g.dx == doctest::Approx(-dt * sigma * 0.5).epsilon(1e-12));
}

TEST_CASE("jump-down fan opens backward at speed k") {
  const double k = 8;
  const Grid1D g(-1, 2.5, 3000);
  const auto u = Velocity1D::constant(1.0, g.x_min, g.x_max);
  SolverState1D s(field_from(g, {{0, 0.5, 1.0}, {0.5, 1.0, 0.5}}), u, k, 0.0);
  const double t = 0.04;
  while (s.t < t) step(s, StepControl{}, t);
  auto at = [&](double x) { return s.field.values[static_cast<int>((x - g.x_min) / g.dx)]; };
  const double edge = 0.5 - k * t;
  CHECK(at(edge - 0.06) > 0.999);
  CHECK(at(edge + 0.06) < 0.99);
  // exact fan value at xi = -6
  const double xi = (edge + 0.08 - 0.5) / t;
  CHECK(at(edge + 0.08) == doctest::Approx(std::pow((1 - xi) / (k + 1), 1 / k)).epsilon(5e-3));
}

TEST_CASE("zero data stays zero") {
  const Grid1D g(-1, 1, 50);
  SolverState1D s(Field1D(g), Velocity1D::affine(1, -0.5, -1, 1), 4, 0.0);
  // Vacuum still carries characteristics at speed |U|.
  CHECK(max_wave_speed(s) == doctest::Approx(1.5 - 0.5 * g.dx));
  for (int n = 0; n < 10; ++n) step(s, StepControl{0.45, 0.01});
  CHECK(s.t == doctest::Approx(0.1));
  CHECK(s.field.values.cwiseAbs().maxCoeff() == 0.0);
  Scenario sc;
  sc.nx = 50;
  CHECK_THROWS_AS(run(sc), Error);
}

TEST_CASE("diagnostic rows") {
  Scenario sc;
  sc.x_min = -1;
  sc.x_max = 2;
  sc.nx = 150;
  sc.T = 0.3;
  sc.intervals = {{-0.5, 0.0, 0.5}};
  const auto res = run(sc);
  for (const auto& r : res.diagnostics.records()) {
    CHECK(r.mass == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.tv <= r.tv_envelope);
    CHECK(r.law_of_state <= law_of_state_bound(sc.k));
    CHECK(r.min_rho >= 0.0);
  }
  CHECK(res.diagnostics.records().size() == sc.output_times().size());
}

TEST_CASE("mass is conserved and the range is kept") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> r01(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    Scenario sc;
    sc.x_min = -2;
    sc.x_max = 3;
    sc.nx = 300;
    sc.velocity.family = "affine";
    sc.velocity.a = 1.5;
    sc.velocity.b = -0.5 * r01(rng);
    const double a = -1 + r01(rng);
    sc.intervals = {{a, a + 0.3 + 0.5 * r01(rng), 0.2 + 0.8 * r01(rng)}};
    sc.k = 1 + std::floor(60 * r01(rng));
    sc.eps = trial % 2 ? 0.005 : 0.0;
    sc.diffusion = trial % 4 == 3 ? DiffusionMode::SplittingImplicit : DiffusionMode::Explicit;
    sc.T = 0.5;
    const auto res = run(sc);
    const double m0 = initial_mass(sc.intervals);
    for (const auto& snap : res.snapshots) {
      double m = 0;
      for (int i = 0; i < sc.nx; ++i) m += snap.field.values[i];
      CHECK(m * sc.grid1d().dx == doctest::Approx(m0).epsilon(1e-12));
      CHECK(snap.field.values.minCoeff() >= -1e-12);
      CHECK(snap.field.values.maxCoeff() <= 1 + 1e-12);
    }
  }
}

TEST_CASE("runs are deterministic") {
  Scenario sc;
  sc.x_min = -1;
  sc.x_max = 2.5;
  sc.nx = 200;
  sc.velocity.family = "affine";
  sc.velocity.a = 2;
  sc.velocity.b = -1;
  sc.intervals = {{0, 0.5, 1}};
  sc.k = 16;
  sc.T = 0.5;
  const auto a = run(sc), b = run(sc);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (size_t i = 0; i < a.snapshots.size(); ++i) CHECK(a.snapshots[i].field.values == b.snapshots[i].field.values);
}

TEST_CASE("time steps land on output times") {
  Scenario sc;
  sc.x_min = -1;
  sc.x_max = 2;
  sc.nx = 100;
  sc.intervals = {{0, 0.5, 0.5}};
  sc.T = 0.35;
  sc.output_dt = 0.1;
  const auto res = run(sc);
  REQUIRE(res.snapshots.size() == 5);
  CHECK(res.snapshots[3].t == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(res.snapshots.back().t == 0.35);
}

TEST_CASE("mass reaching the guard band is an error") {
  Scenario sc;
  sc.x_min = 0;
  sc.x_max = 1;
  sc.nx = 100;
  sc.intervals = {{0.5, 0.9, 0.5}};
  sc.T = 1.0;
  try {
    run(sc, {false});
    FAIL("no overflow detected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainOverflow);
  }
  SUBCASE("initial data in the guard band") {
    Field1D f(Grid1D(0, 1, 10));
    f.values[1] = 0.3;
    CHECK_THROWS_AS(SolverState1D(f, Velocity1D::constant(1, 0, 1), 2, 0), Error);
  }
}

TEST_CASE("implicit and explicit diffusion agree") {
  Scenario sc;
  sc.x_min = -2;
  sc.x_max = 2;
  sc.nx = 400;
  sc.intervals = {{-0.3, 0.3, 0.7}};
  sc.k = 4;
  sc.eps = 0.02;
  sc.T = 0.2;
  sc.output_dt = 0.2;
  const auto ex = run(sc, {false});
  sc.diffusion = DiffusionMode::SplittingImplicit;
  const auto im = run(sc, {false});
  const double l1 = (ex.snapshots.back().field.values - im.snapshots.back().field.values).cwiseAbs().sum() * 0.01;
  CHECK(l1 < 5e-3);
}

TEST_CASE("backward-Euler diffusion conserves mass") {
  std::vector<double> rho(64, 0.0), scratch;
  for (int i = 20; i < 40; ++i) rho[i] = 0.5;
  double m0 = 0;
  for (double v : rho) m0 += v;
  implicit_diffusion(rho, 3.0, scratch);
  double m1 = 0;
  for (double v : rho) m1 += v;
  CHECK(m1 == doctest::Approx(m0).epsilon(1e-14));
  CHECK(*std::min_element(rho.begin(), rho.end()) >= 0.0);
}

TEST_CASE("advance ignores the CFL bound") {
  const Grid1D g(-1, 2, 300);
  SolverState1D s(field_from(g, {{0, 0.5, 0.5}}), Velocity1D::constant(1, -1, 2), 2, 0);
  advance(s, 0.001);
  CHECK(s.t == doctest::Approx(0.001));
  CHECK(stable_dt(s, StepControl{}) > 0.0);
  CHECK(max_wave_speed(s) == doctest::Approx(1.0));
}
