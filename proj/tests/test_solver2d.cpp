#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stiffcrowd/diagnostics.hpp"
#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/initial.hpp"
#include "stiffcrowd/solver2d.hpp"

using namespace stiffcrowd;

namespace {

Scenario contracting(double k, std::vector<InitialBox> boxes, int n = 40) {
  Scenario s;
  s.solver = SolverKind::FV2D;
  s.x_min = s.y_min = -1.5;
  s.x_max = s.y_max = 1.5;
  s.nx = s.ny = n;
  s.velocity.family = "radial";
  s.velocity.lambda = 1.0;
  s.boxes = std::move(boxes);
  s.k = k;
  s.T = 1.0;
  s.output_dt = 0.25;
  return s;
}

}  // namespace

TEST_CASE("radial data under radial contraction conserves mass") {
  const Grid2D g(Grid1D(-1.5, 1.5, 60), Grid1D(-1.5, 1.5, 60));
  Field2D f(g);
  for (int j = 0; j < 60; ++j)
    for (int i = 0; i < 60; ++i) {
      const double r = std::hypot(g.x.center(i), g.y.center(j));
      f.at(i, j) = r < 0.8 ? 0.5 * (1 + std::cos(std::numbers::pi * r / 0.8)) * 0.7 : 0.0;
    }
  SolverState2D s(f, Velocity2D::radial({0, 0}, 1.0, {-1.5, -1.5}, {1.5, 1.5}), 4, 0.0);
  double m = mass(s.field);
  for (int n = 0; n < 30; ++n) {
    step2d(s, StepControl{});
    const double m1 = mass(s.field);
    CHECK(std::abs(m1 - m) <= 1e-10 * m);
    m = m1;
  }
}

TEST_CASE("saturated plateau interior is untouched by one step") {
  const Grid2D g(Grid1D(-1, 1, 40), Grid1D(-1, 1, 40));
  const std::vector<InitialBox> box = {{-0.5, 0.5, -0.5, 0.5, 1.0}};
  SolverState2D s(build_initial(box, g), Velocity2D::radial({0, 0}, 1.0, {-1, -1}, {1, 1}), 8, 0.0);
  const Field2D before = s.field;
  step2d(s, StepControl{});
  for (int j = 0; j < 40; ++j)
    for (int i = 0; i < 40; ++i) {
      const double x = g.x.center(i), y = g.y.center(j);
      if (std::abs(x) < 0.4 && std::abs(y) < 0.4) CHECK(s.field.at(i, j) == before.at(i, j));
    }
}

TEST_CASE("axis-aligned velocity reproduces 1D runs on a non-square grid") {
  for (int axis = 0; axis < 2; ++axis) {
    const Grid2D g(Grid1D(-1.0, 2.0, 60), Grid1D(-1.0, 2.5, 44));
    const Eigen::Vector2d c = axis == 0 ? Eigen::Vector2d(1, 0) : Eigen::Vector2d(0, 1);
    const std::vector<InitialBox> boxes = {{-0.4, 0.2, -0.3, 0.4, 0.9}, {0.3, 0.6, 0.0, 0.8, 0.4}};
    SolverState2D s(build_initial(boxes, g), Velocity2D::constant(c, {-1, -1}, {2, 2.5}), 3, 0.0);
    const Grid1D lg = axis == 0 ? g.x : g.y;
    const int lines = axis == 0 ? g.ny() : g.nx();
    std::vector<SolverState1D> ref;
    for (int l = 0; l < lines; ++l) {
      Field1D f(lg);
      for (int m = 0; m < lg.n_cells; ++m) f.values[m] = axis == 0 ? s.field.at(m, l) : s.field.at(l, m);
      ref.emplace_back(f, Velocity1D::constant(1.0, lg.x_min, lg.x_max), 3, 0.0);
    }
    for (int n = 0; n < 15; ++n) {
      const double dt = step2d(s, StepControl{});
      for (auto& r : ref) {
        if (axis == 0) {
          advance(r, 0.5 * dt);
          advance(r, 0.5 * dt);
        } else {
          advance(r, dt);
        }
      }
    }
    double worst = 0;
    for (int l = 0; l < lines; ++l)
      for (int m = 0; m < lg.n_cells; ++m)
        worst = std::max(worst, std::abs((axis == 0 ? s.field.at(m, l) : s.field.at(l, m)) - ref[l].field.values[m]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("contraction compresses and respects the upper bound") {
  SUBCASE("k = 1 compresses") {
    const auto res = run2d(contracting(1, {{-1.0, -0.2, -0.5, 0.5, 0.6}, {0.2, 1.0, -0.5, 0.5, 0.6}}), {false});
    CHECK(res.snapshots.back().field.values.maxCoeff() > 0.6);
    CHECK(res.snapshots.back().field.values.maxCoeff() <= 1 + 1e-12);
  }
  SUBCASE("k = 64") {
    const auto res = run2d(contracting(64, {{-1.0, -0.2, -0.5, 0.5, 0.6}, {0.2, 1.0, -0.5, 0.5, 0.6}}), {false});
    for (const auto& snap : res.snapshots) {
      CHECK(snap.field.values.maxCoeff() <= 1 + 1e-12);
      CHECK(snap.field.values.minCoeff() >= -1e-12);
    }
  }
}

TEST_CASE("zero data stays zero in 2D") {
  const Grid2D g(Grid1D(-1, 1, 20), Grid1D(-1, 1, 20));
  SolverState2D s(Field2D(g), Velocity2D::radial({0, 0}, 1, {-1, -1}, {1, 1}), 4, 0.0);
  for (int n = 0; n < 10; ++n) step2d(s, StepControl{0.45, 0.01});
  CHECK(s.field.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("2D guard band") {
  const Grid2D g(Grid1D(0, 1, 10), Grid1D(0, 1, 10));
  Field2D f(g);
  f.at(5, 9) = 0.1;
  try {
    check_state(f, 0.0);
    FAIL("guard cell accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainOverflow);
  }
}

TEST_CASE("stiff lines are subcycled rather than overshooting") {
  // Rows carry very different speeds; dt comes from the slowest axis bound but
  // every line must stay in range.
  auto sc = contracting(256, {{-0.6, 0.6, -0.2, 0.2, 0.98}}, 48);
  sc.T = 0.3;
  const auto res = run2d(sc, {false});
  CHECK(res.snapshots.back().field.values.maxCoeff() <= 1 + 1e-12);
}
