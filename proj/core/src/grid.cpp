#include "rombox/grid.hpp"

#include <cmath>
#include <string>

#include "rombox/error.hpp"

namespace rombox {

Grid1D build_grid_1d(int n, double length) {
  if (n < 3) {
    throw Error(ErrorCode::invalid_grid,
                "need at least 3 grid points for the central stencil, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::invalid_grid, "domain length must be positive and finite");
  }
  Grid1D grid;
  grid.n = n;
  grid.length = length;
  grid.h = length / n;
  grid.centers.resize(n);
  for (int i = 0; i < n; ++i) grid.centers[i] = (i + 0.5) * grid.h;
  return grid;
}

Index Grid2D::index(int i, int j) const noexcept {
  i %= nx;
  if (i < 0) i += nx;
  j %= ny;
  if (j < 0) j += ny;
  return Index(j) * nx + i;
}

Grid2D build_grid_2d(int nx, int ny, double x_min, double x_max, double y_min, double y_max) {
  if (nx < 3 || ny < 3) {
    throw Error(ErrorCode::invalid_grid, "need at least 3 cells per axis, got " +
                                             std::to_string(nx) + "x" + std::to_string(ny));
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw Error(ErrorCode::invalid_grid, "empty domain");
  }
  Grid2D grid;
  grid.nx = nx;
  grid.ny = ny;
  grid.x_min = x_min;
  grid.x_max = x_max;
  grid.y_min = y_min;
  grid.y_max = y_max;
  grid.hx = (x_max - x_min) / nx;
  grid.hy = (y_max - y_min) / ny;
  return grid;
}

}  // namespace rombox
