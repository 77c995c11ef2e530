#pragma once

#include <Eigen/Core>

namespace stiffcrowd {

/// Uniform partition of [x_min, x_max] into n_cells cells.
/// Face f sits at x_min + f*dx, f = 0..n_cells; cell i lies between faces i and i+1.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 4;
  double dx = 0.25;

  Grid1D() = default;
  Grid1D(double x_min, double x_max, int n_cells);

  double center(int i) const { return x_min + (i + 0.5) * dx; }
  double face(int f) const { return x_min + f * dx; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Tensor grid. Cells are stored row-major: index(i, j) = j * nx + i, with i
/// running along x and each row j contiguous in memory.
struct Grid2D {
  Grid1D x;
  Grid1D y;

  Grid2D() = default;
  Grid2D(Grid1D x_axis, Grid1D y_axis) : x(x_axis), y(y_axis) {}

  int nx() const { return x.n_cells; }
  int ny() const { return y.n_cells; }
  int size() const { return x.n_cells * y.n_cells; }
  int index(int i, int j) const { return j * x.n_cells + i; }
  double cell_area() const { return x.dx * y.dx; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// Cell-averaged density on a 1D grid.
struct Field1D {
  Grid1D grid;
  Eigen::VectorXd values;

  Field1D() = default;
  explicit Field1D(const Grid1D& g) : grid(g), values(Eigen::VectorXd::Zero(g.n_cells)) {}
  Field1D(const Grid1D& g, Eigen::VectorXd v);
};

/// Cell-averaged density on a 2D grid, row-major (see Grid2D).
struct Field2D {
  Grid2D grid;
  Eigen::VectorXd values;

  Field2D() = default;
  explicit Field2D(const Grid2D& g) : grid(g), values(Eigen::VectorXd::Zero(g.size())) {}
  Field2D(const Grid2D& g, Eigen::VectorXd v);

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  double at(int i, int j) const { return values[grid.index(i, j)]; }
};

using DensityField1D = Field1D;
using DensityField2D = Field2D;
using PressureField1D = Field1D;
using PressureField2D = Field2D;

/// Immutable copy of a field at time t, tagged with the run parameters it came from.
struct Snapshot1D {
  double t = 0.0;
  double k = 1.0;
  double eps = 0.0;
  Field1D field;
};

struct Snapshot2D {
  double t = 0.0;
  double k = 1.0;
  double eps = 0.0;
  Field2D field;
};

}  // namespace stiffcrowd
