#include "imexcouple/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "imexcouple/error.hpp"

namespace imexcouple {

StructuredGrid2D build_grid(int nx, int nz, Interval x_extent, Interval z_extent) {
  if (nx < 1 || nz < 1) {
    throw GridError("grid needs at least one cell per direction, got " + std::to_string(nx) +
                    "x" + std::to_string(nz));
  }
  if (!(x_extent.hi > x_extent.lo) || !(z_extent.hi > z_extent.lo) ||
      !std::isfinite(x_extent.hi - x_extent.lo) || !std::isfinite(z_extent.hi - z_extent.lo)) {
    throw GridError("grid extent must have positive, finite length");
  }
  StructuredGrid2D g;
  g.nx = nx;
  g.nz = nz;
  g.x0 = x_extent.lo;
  g.z0 = z_extent.lo;
  g.dx = (x_extent.hi - x_extent.lo) / nx;
  g.dz = (z_extent.hi - z_extent.lo) / nz;
  return g;
}

std::pair<double, double> cell_center(const StructuredGrid2D& grid, int i, int j) {
  if (i < 1 || i > grid.nx || j < 1 || j > grid.nz) {
    throw std::out_of_range("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside " + std::to_string(grid.nx) + "x" +
                            std::to_string(grid.nz) + " grid");
  }
  return {grid.x0 + (i - 0.5) * grid.dx, grid.z0 + (j - 0.5) * grid.dz};
}

}  // namespace imexcouple
