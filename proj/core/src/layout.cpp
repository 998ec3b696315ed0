#include "rombox/layout.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rombox/error.hpp"

namespace rombox {
namespace {

struct AxisLayout {
  int starts_spacing = 0;
  int points = 0;
};

AxisLayout axis_layout(int n, int count, LayoutMode mode, const char* axis) {
  if (count < 1) {
    throw Error(ErrorCode::layout, std::string("subdomain count along ") + axis + " must be >= 1");
  }
  if (n % count != 0) {
    throw Error(ErrorCode::layout, std::string("grid size along ") + axis + " (" +
                                       std::to_string(n) + ") must be divisible by the subdomain count (" +
                                       std::to_string(count) + ")");
  }
  if (mode == LayoutMode::overlap && count < 2) {
    throw Error(ErrorCode::layout,
                std::string("overlapping layouts need at least 2 subdomains along ") + axis);
  }
  AxisLayout axis_info;
  axis_info.starts_spacing = n / count;
  axis_info.points = mode == LayoutMode::overlap ? 2 * (n / count) : n / count;
  return axis_info;
}

// Subdomains whose points lie within one grid step (Chebyshev distance,
// periodic) of any point of s.
void compute_neighbors(SubdomainLayout& layout) {
  const Index n = layout.grid_size();
  std::vector<std::vector<int>> covering(n);
  for (int s = 0; s < layout.subdomain_count(); ++s) {
    for (Index g : layout.indices[s]) covering[g].push_back(s);
  }
  const int nx = layout.grid_nx;
  const int ny = layout.grid_ny;
  const int oy_min = layout.dims == 2 ? -1 : 0;
  const int oy_max = layout.dims == 2 ? 1 : 0;

  layout.neighbors.assign(layout.subdomain_count(), {});
  for (int s = 0; s < layout.subdomain_count(); ++s) {
    std::set<int> found;
    for (Index g : layout.indices[s]) {
      const int gx = static_cast<int>(g % nx);
      const int gy = static_cast<int>(g / nx);
      for (int oy = oy_min; oy <= oy_max; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
          const int px = (gx + ox + nx) % nx;
          const int py = (gy + oy + ny) % ny;
          for (int other : covering[Index(py) * nx + px]) {
            if (other != s) found.insert(other);
          }
        }
      }
    }
    layout.neighbors[s].assign(found.begin(), found.end());
  }
}

}  // namespace

std::vector<int> SubdomainLayout::coverage() const {
  std::vector<int> count(grid_size(), 0);
  for (const auto& subdomain : indices) {
    for (Index g : subdomain) ++count[g];
  }
  return count;
}

SubdomainLayout build_layout(const Grid1D& grid, int subdomains, LayoutMode mode) {
  const AxisLayout ax = axis_layout(grid.n, subdomains, mode, "x");
  SubdomainLayout layout;
  layout.mode = mode;
  layout.dims = 1;
  layout.grid_nx = grid.n;
  layout.grid_ny = 1;
  layout.count_x = subdomains;
  layout.count_y = 1;
  layout.points_x = ax.points;
  layout.points_y = 1;
  layout.origin_x = 0.0;
  layout.length_x = grid.length;
  layout.alpha_y = {0.0};
  layout.beta_y = {0.0};

  layout.indices.resize(subdomains);
  for (int s = 0; s < subdomains; ++s) {
    const int start = s * ax.starts_spacing;
    layout.alpha_x.push_back(start * grid.h);
    layout.beta_x.push_back((start + ax.points) * grid.h);
    auto& idx = layout.indices[s];
    idx.resize(ax.points);
    for (int k = 0; k < ax.points; ++k) idx[k] = (start + k) % grid.n;
  }
  compute_neighbors(layout);
  return layout;
}

SubdomainLayout build_layout(const Grid2D& grid, int subdomains_x, int subdomains_y,
                             LayoutMode mode) {
  const AxisLayout ax = axis_layout(grid.nx, subdomains_x, mode, "x");
  const AxisLayout ay = axis_layout(grid.ny, subdomains_y, mode, "y");
  SubdomainLayout layout;
  layout.mode = mode;
  layout.dims = 2;
  layout.grid_nx = grid.nx;
  layout.grid_ny = grid.ny;
  layout.count_x = subdomains_x;
  layout.count_y = subdomains_y;
  layout.points_x = ax.points;
  layout.points_y = ay.points;
  layout.origin_x = grid.x_min;
  layout.origin_y = grid.y_min;
  layout.length_x = grid.length_x();
  layout.length_y = grid.length_y();

  for (int sx = 0; sx < subdomains_x; ++sx) {
    const int start = sx * ax.starts_spacing;
    layout.alpha_x.push_back(grid.x_min + start * grid.hx);
    layout.beta_x.push_back(grid.x_min + (start + ax.points) * grid.hx);
  }
  for (int sy = 0; sy < subdomains_y; ++sy) {
    const int start = sy * ay.starts_spacing;
    layout.alpha_y.push_back(grid.y_min + start * grid.hy);
    layout.beta_y.push_back(grid.y_min + (start + ay.points) * grid.hy);
  }

  layout.indices.resize(layout.subdomain_count());
  for (int sy = 0; sy < subdomains_y; ++sy) {
    for (int sx = 0; sx < subdomains_x; ++sx) {
      auto& idx = layout.indices[sy * subdomains_x + sx];
      idx.reserve(layout.points_per_subdomain());
      for (int ly = 0; ly < ay.points; ++ly) {
        for (int lx = 0; lx < ax.points; ++lx) {
          idx.push_back(grid.index(sx * ax.starts_spacing + lx, sy * ay.starts_spacing + ly));
        }
      }
    }
  }
  compute_neighbors(layout);
  return layout;
}

}  // namespace rombox
