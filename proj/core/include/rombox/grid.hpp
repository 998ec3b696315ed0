#pragma once

#include <vector>

#include "rombox/linalg.hpp"

namespace rombox {

/// Uniform periodic grid on [0, length). Point i (0-based) sits at the cell
/// center (i + 1/2) h, so the box functions around the points tile the domain.
struct Grid1D {
  int n = 0;
  double length = 0.0;
  double h = 0.0;
  std::vector<double> centers;

  double cell_volume() const noexcept { return h; }
};

/// Throws ErrorCode::invalid_grid for n < 3 or a non-positive length.
Grid1D build_grid_1d(int n, double length = 2.0 * kPi);

/// Uniform periodic cell-centered grid on [x_min, x_max) x [y_min, y_max).
/// Cells are numbered with x fastest: index = j * nx + i. Velocity samples
/// live on the staggered faces: the x-face of cell (i, j) is its east face
/// at x_min + (i + 1) hx, the y-face its north face at y_min + (j + 1) hy.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double hx = 0.0;
  double hy = 0.0;

  int cell_count() const noexcept { return nx * ny; }
  double cell_volume() const noexcept { return hx * hy; }
  double length_x() const noexcept { return x_max - x_min; }
  double length_y() const noexcept { return y_max - y_min; }

  /// Periodic: i and j may lie outside [0, nx) / [0, ny).
  Index index(int i, int j) const noexcept;

  double x_center(int i) const noexcept { return x_min + (i + 0.5) * hx; }
  double y_center(int j) const noexcept { return y_min + (j + 0.5) * hy; }
  double x_face(int i) const noexcept { return x_min + (i + 1) * hx; }
  double y_face(int j) const noexcept { return y_min + (j + 1) * hy; }
};

Grid2D build_grid_2d(int nx, int ny, double x_min = -kPi, double x_max = kPi,
                     double y_min = -kPi, double y_max = kPi);

}  // namespace rombox
