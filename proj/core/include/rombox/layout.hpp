#pragma once

#include <cstdint>
#include <vector>

#include "rombox/grid.hpp"
#include "rombox/linalg.hpp"

namespace rombox {

enum class LayoutMode : std::uint8_t { nonoverlap = 0, overlap = 1 };

/// Equal-sized subdomains on a uniform periodic grid.
///
/// Per axis with n points and I subdomains the subdomain start points are
/// spaced n / I apart, starting at the first grid cell. Non-overlapping
/// subdomains hold n / I points per axis. Overlapping subdomains are twice as
/// wide (2n / I points per axis), so every point is covered twice per axis:
/// twice in 1D and four times in 2D. The last subdomains wrap periodically.
///
/// Subdomains are numbered x fastest (s = sy * count_x + sx) and the points
/// inside a subdomain likewise (k = ly * points_x + lx).
struct SubdomainLayout {
  LayoutMode mode = LayoutMode::nonoverlap;
  int dims = 1;
  int grid_nx = 0;
  int grid_ny = 1;
  int count_x = 0;
  int count_y = 1;
  int points_x = 0;
  int points_y = 1;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double length_x = 0.0;
  double length_y = 0.0;

  /// Lower and upper bounds of each subdomain position along an axis, in
  /// unwrapped coordinates (the last upper bounds may exceed the domain).
  std::vector<double> alpha_x, beta_x;
  std::vector<double> alpha_y, beta_y;

  /// indices[s][k]: global grid index of local point k of subdomain s.
  std::vector<std::vector<Index>> indices;

  /// Subdomains with a point within one grid step of subdomain s (periodic,
  /// diagonal steps included in 2D). Face contacts for nonoverlap layouts;
  /// shared or adjacent points for overlap layouts (i +- 1, i +- 2 in 1D).
  std::vector<std::vector<int>> neighbors;

  int subdomain_count() const noexcept { return count_x * count_y; }
  int points_per_subdomain() const noexcept { return points_x * points_y; }
  Index grid_size() const noexcept { return Index(grid_nx) * grid_ny; }
  int subdomain_x(int s) const noexcept { return s % count_x; }
  int subdomain_y(int s) const noexcept { return s / count_x; }

  /// Number of subdomains covering each grid point (1, 2 or 4 by construction).
  std::vector<int> coverage() const;
};

/// Throws ErrorCode::layout when n is not divisible by the subdomain count,
/// or for overlap layouts with fewer than two subdomains per axis.
SubdomainLayout build_layout(const Grid1D& grid, int subdomains, LayoutMode mode);
SubdomainLayout build_layout(const Grid2D& grid, int subdomains_x, int subdomains_y,
                             LayoutMode mode);

}  // namespace rombox
