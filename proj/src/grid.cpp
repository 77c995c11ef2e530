#include "stiffcrowd/grid.hpp"

#include <cmath>
#include <string>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

Grid1D::Grid1D(double lo, double hi, int n) : x_min(lo), x_max(hi), n_cells(n) {
  if (n < 4) throw Error(ErrorKind::InvalidArgument, "grid needs at least 4 cells, got " + std::to_string(n));
  if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo))
    throw Error(ErrorKind::InvalidArgument, "grid bounds must be finite with x_max > x_min");
  dx = (x_max - x_min) / n_cells;
}

Field1D::Field1D(const Grid1D& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
  if (values.size() != g.n_cells) throw Error(ErrorKind::InvalidArgument, "field size does not match grid");
}

Field2D::Field2D(const Grid2D& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size()) throw Error(ErrorKind::InvalidArgument, "field size does not match grid");
}

}  // namespace stiffcrowd
