#include "stiffcrowd/initial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

namespace {

constexpr double kValueTol = 1e-12;

void check_value(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::ValueOutOfRange, "initial value must lie in [0,1]");
}

void check_inside(double a, double b, const Grid1D& g) {
  if (!(a <= b)) throw Error(ErrorKind::SpecOutsideDomain, "interval endpoints out of order");
  if (a < g.x_min || b > g.x_max) throw Error(ErrorKind::SpecOutsideDomain, "initial piece exceeds the grid");
}

// Fraction of each cell of g covered by [a, b].
std::vector<std::pair<int, double>> coverage(double a, double b, const Grid1D& g) {
  std::vector<std::pair<int, double>> out;
  if (b <= a) return out;
  const int first = std::clamp(static_cast<int>(std::floor((a - g.x_min) / g.dx)), 0, g.n_cells - 1);
  const int last = std::clamp(static_cast<int>(std::floor((b - g.x_min) / g.dx)), 0, g.n_cells - 1);
  for (int i = first; i <= last; ++i) {
    const double left = g.face(i), right = g.face(i + 1);
    if (a <= left && b >= right) {
      out.emplace_back(i, 1.0);
      continue;
    }
    const double lo = std::max(a, left);
    const double hi = std::min(b, right);
    if (hi > lo) out.emplace_back(i, (hi - lo) / g.dx);
  }
  return out;
}

void check_range(const Eigen::VectorXd& v) {
  if (v.size() > 0 && v.maxCoeff() > 1.0 + kValueTol)
    throw Error(ErrorKind::ValueOutOfRange, "overlapping initial pieces exceed 1");
}

}  // namespace

Field1D build_initial(std::span<const InitialInterval> pieces, const Grid1D& grid) {
  Field1D field(grid);
  for (const auto& p : pieces) {
    check_value(p.value);
    check_inside(p.a, p.b, grid);
    for (auto [i, frac] : coverage(p.a, p.b, grid)) field.values[i] += p.value * frac;
  }
  check_range(field.values);
  return field;
}

Field2D build_initial(std::span<const InitialBox> pieces, const Grid2D& grid) {
  Field2D field(grid);
  for (const auto& p : pieces) {
    check_value(p.value);
    check_inside(p.x0, p.x1, grid.x);
    check_inside(p.y0, p.y1, grid.y);
    const auto cx = coverage(p.x0, p.x1, grid.x);
    const auto cy = coverage(p.y0, p.y1, grid.y);
    for (auto [j, fy] : cy)
      for (auto [i, fx] : cx) field.at(i, j) += p.value * fx * fy;
  }
  check_range(field.values);
  return field;
}

double initial_mass(std::span<const InitialInterval> pieces) {
  double m = 0.0;
  for (const auto& p : pieces) m += p.value * (p.b - p.a);
  return m;
}

double initial_mass(std::span<const InitialBox> pieces) {
  double m = 0.0;
  for (const auto& p : pieces) m += p.value * (p.x1 - p.x0) * (p.y1 - p.y0);
  return m;
}

}  // namespace stiffcrowd
