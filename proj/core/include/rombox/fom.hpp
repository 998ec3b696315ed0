#pragma once

#include <array>
#include <functional>
#include <optional>
#include <variant>

#include "rombox/grid.hpp"
#include "rombox/linalg.hpp"

namespace rombox {

struct StateVector {
  Vector values;
  double time = 0.0;
};

using VelocityField = std::function<std::array<double, 2>(double x, double y)>;

/// V(x, y) = [cos(x - y), cos(x - y)].
VelocityField default_velocity();

/// Normal velocity components on the staggered faces. `u[k]` is the x-velocity
/// on the east face of cell k, `v[k]` the y-velocity on its north face.
struct FaceVelocity {
  Vector u;
  Vector v;
};

FaceVelocity sample_face_velocity(const Grid2D& grid, const VelocityField& field);

/// Net outflow per unit cell volume.
Vector discrete_divergence(const Grid2D& grid, const FaceVelocity& velocity);

/// Central difference d/dx: D[i, i+1] = 1/(2h), D[i, i-1] = -1/(2h), periodic.
SparseMatrix build_advection_operator_1d(const Grid1D& grid);

/// Flux-form convection C u ~ div(V u) with face values taken as the mean of
/// the two adjacent cells. Throws ErrorCode::non_solenoidal_velocity when the
/// discrete divergence exceeds `divergence_tolerance` anywhere.
SparseMatrix build_convection_operator_2d(const Grid2D& grid,
                                          const FaceVelocity& velocity,
                                          double divergence_tolerance = 1e-10);

/// Five-point periodic Laplacian (symmetric, negative semi-definite).
SparseMatrix build_laplacian_2d(const Grid2D& grid);

/// Semi-discrete model du/dt = rhs * u.
///   1D: rhs = -c D
///   2D: rhs = -C + nu L
struct FomModel {
  std::variant<Grid1D, Grid2D> grid;
  SparseMatrix advection;                 ///< skew-symmetric D or C
  std::optional<SparseMatrix> diffusion;  ///< unscaled Laplacian L (2D only)
  double c = 0.0;
  FaceVelocity velocity;
  VelocityField field;                    ///< continuous velocity (2D only)
  double nu = 0.0;
  SparseMatrix rhs;

  int dimension() const noexcept { return grid.index() == 0 ? 1 : 2; }
  Index size() const noexcept { return advection.rows(); }
  double cell_volume() const noexcept;
  const Grid1D& grid_1d() const;
  const Grid2D& grid_2d() const;
};

FomModel build_fom_1d(const Grid1D& grid, double c);
FomModel build_fom_2d(const Grid2D& grid, const VelocityField& field, double nu);

/// exp(-50 (x - pi/4)^2) at the grid points.
StateVector initial_condition_1d(const Grid1D& grid);
double gaussian_profile_1d(double x);

/// Sum of three Gaussians placed on the fastest streamlines.
StateVector initial_condition_2d(const Grid2D& grid);
double three_gaussians_2d(double x, double y);

/// (cell volume / 2) * sum(u^2).
double energy(const Vector& values, double cell_volume);
double energy(const StateVector& state, const Grid1D& grid);
double energy(const StateVector& state, const Grid2D& grid);

/// Traveling wave u0((x - c t) mod L) evaluated at the grid points.
StateVector exact_solution_1d(const Grid1D& grid, double t, double c,
                              const std::function<double(double)>& profile = gaussian_profile_1d);

}  // namespace rombox
