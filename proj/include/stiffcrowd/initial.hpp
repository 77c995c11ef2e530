#pragma once

#include <span>

#include "stiffcrowd/grid.hpp"

namespace stiffcrowd {

/// value * indicator of [a, b].
struct InitialInterval {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
};

/// value * indicator of [x0, x1] x [y0, y1].
struct InitialBox {
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
  double value = 0.0;
};

/// Exact cell averages of a sum of indicators. Throws SpecOutsideDomain when a
/// piece leaves the grid and ValueOutOfRange when a value (or an overlap sum)
/// leaves [0, 1].
Field1D build_initial(std::span<const InitialInterval> pieces, const Grid1D& grid);
Field2D build_initial(std::span<const InitialBox> pieces, const Grid2D& grid);

/// Analytic L1 mass of the datum.
double initial_mass(std::span<const InitialInterval> pieces);
double initial_mass(std::span<const InitialBox> pieces);

}  // namespace stiffcrowd
