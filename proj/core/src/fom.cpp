#include "rombox/fom.hpp"

#include <cmath>
#include <string>

#include "rombox/error.hpp"

namespace rombox {

VelocityField default_velocity() {
  return [](double x, double y) {
    const double v = std::cos(x - y);
    return std::array<double, 2>{v, v};
  };
}

FaceVelocity sample_face_velocity(const Grid2D& grid, const VelocityField& field) {
  FaceVelocity faces;
  faces.u.resize(grid.cell_count());
  faces.v.resize(grid.cell_count());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Index k = grid.index(i, j);
      faces.u[k] = field(grid.x_face(i), grid.y_center(j))[0];
      faces.v[k] = field(grid.x_center(i), grid.y_face(j))[1];
    }
  }
  return faces;
}

Vector discrete_divergence(const Grid2D& grid, const FaceVelocity& velocity) {
  Vector div(grid.cell_count());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Index k = grid.index(i, j);
      div[k] = (velocity.u[k] - velocity.u[grid.index(i - 1, j)]) / grid.hx +
               (velocity.v[k] - velocity.v[grid.index(i, j - 1)]) / grid.hy;
    }
  }
  return div;
}

SparseMatrix build_advection_operator_1d(const Grid1D& grid) {
  const int n = grid.n;
  const double w = 1.0 / (2.0 * grid.h);
  std::vector<Triplet> entries;
  entries.reserve(2 * n);
  for (int i = 0; i < n; ++i) {
    entries.emplace_back(i, (i + 1) % n, w);
    entries.emplace_back(i, (i + n - 1) % n, -w);
  }
  SparseMatrix d(n, n);
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

SparseMatrix build_convection_operator_2d(const Grid2D& grid, const FaceVelocity& velocity,
                                          double divergence_tolerance) {
  const Index n = grid.cell_count();
  if (velocity.u.size() != n || velocity.v.size() != n) {
    throw Error(ErrorCode::grid_mismatch, "face velocity size does not match the grid");
  }
  const Vector div = discrete_divergence(grid, velocity);
  const double max_div = div.cwiseAbs().maxCoeff();
  if (!(max_div <= divergence_tolerance)) {
    throw Error(ErrorCode::non_solenoidal_velocity,
                "max |discrete divergence| = " + std::to_string(max_div) + " exceeds " +
                    std::to_string(divergence_tolerance));
  }

  // Each face contributes +F/2 to the upwind-side row and -F/2 to the other,
  // so off-diagonal pairs mirror exactly. The diagonal would be div/2, which
  // is zero for a solenoidal field, and is left out.
  std::vector<Triplet> entries;
  entries.reserve(4 * n);
  const double wx = 0.5 / grid.hx;
  const double wy = 0.5 / grid.hy;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Index k = grid.index(i, j);
      entries.emplace_back(k, grid.index(i + 1, j), wx * velocity.u[k]);
      entries.emplace_back(k, grid.index(i - 1, j), -wx * velocity.u[grid.index(i - 1, j)]);
      entries.emplace_back(k, grid.index(i, j + 1), wy * velocity.v[k]);
      entries.emplace_back(k, grid.index(i, j - 1), -wy * velocity.v[grid.index(i, j - 1)]);
    }
  }
  SparseMatrix c(n, n);
  c.setFromTriplets(entries.begin(), entries.end());
  return c;
}

SparseMatrix build_laplacian_2d(const Grid2D& grid) {
  const Index n = grid.cell_count();
  const double ax = 1.0 / (grid.hx * grid.hx);
  const double ay = 1.0 / (grid.hy * grid.hy);
  std::vector<Triplet> entries;
  entries.reserve(5 * n);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Index k = grid.index(i, j);
      entries.emplace_back(k, k, -2.0 * (ax + ay));
      entries.emplace_back(k, grid.index(i + 1, j), ax);
      entries.emplace_back(k, grid.index(i - 1, j), ax);
      entries.emplace_back(k, grid.index(i, j + 1), ay);
      entries.emplace_back(k, grid.index(i, j - 1), ay);
    }
  }
  SparseMatrix l(n, n);
  l.setFromTriplets(entries.begin(), entries.end());
  return l;
}

double FomModel::cell_volume() const noexcept {
  return dimension() == 1 ? std::get<Grid1D>(grid).cell_volume()
                          : std::get<Grid2D>(grid).cell_volume();
}

const Grid1D& FomModel::grid_1d() const {
  if (dimension() != 1) throw Error(ErrorCode::grid_mismatch, "model is not one-dimensional");
  return std::get<Grid1D>(grid);
}

const Grid2D& FomModel::grid_2d() const {
  if (dimension() != 2) throw Error(ErrorCode::grid_mismatch, "model is not two-dimensional");
  return std::get<Grid2D>(grid);
}

FomModel build_fom_1d(const Grid1D& grid, double c) {
  FomModel model;
  model.grid = grid;
  model.advection = build_advection_operator_1d(grid);
  model.c = c;
  model.rhs = -c * model.advection;
  return model;
}

FomModel build_fom_2d(const Grid2D& grid, const VelocityField& field, double nu) {
  if (!(nu >= 0.0)) throw Error(ErrorCode::invalid_input, "viscosity must be non-negative");
  FomModel model;
  model.grid = grid;
  model.velocity = sample_face_velocity(grid, field);
  model.field = field;
  model.advection = build_convection_operator_2d(grid, model.velocity);
  model.diffusion = build_laplacian_2d(grid);
  model.nu = nu;
  model.rhs = nu * *model.diffusion - model.advection;
  return model;
}

double gaussian_profile_1d(double x) {
  const double d = x - 0.25 * kPi;
  return std::exp(-50.0 * d * d);
}

StateVector initial_condition_1d(const Grid1D& grid) {
  StateVector state;
  state.values.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) state.values[i] = gaussian_profile_1d(grid.centers[i]);
  return state;
}

double three_gaussians_2d(double x, double y) {
  const double hp = 0.5 * kPi;
  return -std::exp(-2.0 * x * x - 2.0 * y * y) +
         std::exp(-2.0 * (x - hp) * (x - hp) - 2.0 * (y + hp) * (y + hp)) +
         std::exp(-2.0 * (x + hp) * (x + hp) - 2.0 * (y - hp) * (y - hp));
}

StateVector initial_condition_2d(const Grid2D& grid) {
  StateVector state;
  state.values.resize(grid.cell_count());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      state.values[grid.index(i, j)] = three_gaussians_2d(grid.x_center(i), grid.y_center(j));
    }
  }
  return state;
}

double energy(const Vector& values, double cell_volume) {
  return 0.5 * cell_volume * values.squaredNorm();
}

double energy(const StateVector& state, const Grid1D& grid) {
  if (state.values.size() != grid.n) throw Error(ErrorCode::grid_mismatch, "state size");
  return energy(state.values, grid.cell_volume());
}

double energy(const StateVector& state, const Grid2D& grid) {
  if (state.values.size() != grid.cell_count()) throw Error(ErrorCode::grid_mismatch, "state size");
  return energy(state.values, grid.cell_volume());
}

StateVector exact_solution_1d(const Grid1D& grid, double t, double c,
                              const std::function<double(double)>& profile) {
  StateVector state;
  state.time = t;
  state.values.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    double x = std::fmod(grid.centers[i] - c * t, grid.length);
    if (x < 0.0) x += grid.length;
    state.values[i] = profile(x);
  }
  return state;
}

}  // namespace rombox
