#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rombox/fom.hpp"
#include "rombox/grid.hpp"
#include "rombox/integrators.hpp"
#include "rombox/pod_basis.hpp"
#include "rombox/rom.hpp"
#include "rombox/snapshots.hpp"

namespace rombox {

/// Solution error = ROM error + projection error, all relative to ||u_fom||.
struct ErrorDecomposition {
  Vector solution;
  Vector rom;
  Vector projection;
  double solution_norm = 0.0;
  double rom_norm = 0.0;
  double projection_norm = 0.0;
};

/// Throws ErrorCode::undefined_metric for a zero reference.
ErrorDecomposition error_decomposition(const Vector& rom_state, const Vector& fom_state,
                                       const PodBasis& basis);

/// ||u - u_ref|| / ||u_ref||; throws ErrorCode::undefined_metric for zero u_ref.
double relative_error(const Vector& state, const Vector& reference);

struct EnergyDiagnostics {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> drift;          ///< (E(t) - E(0)) / E(0)
  std::vector<double> rate;           ///< vol (Gamma a)^T Gamma rom_rhs(a)
  std::vector<double> relative_rate;  ///< |rate| / (vol ||Gamma a|| ||Gamma rom_rhs(a)||)
};

EnergyDiagnostics energy_diagnostics(const Trajectory& reduced, const RomModel& model);

/// Energy of full-order states with the given cell volume.
EnergyDiagnostics fom_energy_series(const Trajectory& trajectory, double cell_volume);

/// Continuous-time energy rate at a reduced state, absolute and relative.
struct EnergyRate {
  double absolute = 0.0;
  double relative = 0.0;
};
EnergyRate energy_rate(const RomModel& model, const Vector& coefficients);

/// Periodic forward differences in x then y, length 2N.
Vector forward_gradient(const Grid2D& grid, const Vector& values);

/// ||G u - G u_ref|| / ||G u_ref||; throws ErrorCode::undefined_metric when
/// the reference gradient vanishes.
double gradient_error(const Vector& state, const Vector& reference, const Grid2D& grid);

struct MetricSeries {
  std::vector<double> times;
  std::vector<double> solution_error;
  std::vector<double> rom_error;
  std::vector<double> projection_error;
  std::vector<double> energy;
  std::vector<double> energy_rate;
  std::optional<std::vector<double>> gradient_error;
  bool stable = true;

  double mean_solution_error() const;
  double mean_gradient_error() const;
};

/// Evaluates every recorded ROM state whose time matches a reference
/// snapshot time (within 1e-9). Gradient errors are added for 2D models.
MetricSeries rom_metric_series(const RomModel& model, const Trajectory& reduced,
                               const SnapshotSet& reference);

/// Same for a full-order trajectory living on the reference grid (coarse FOM
/// after prolongation). ROM and projection error columns are left empty.
MetricSeries state_metric_series(const Trajectory& states, const SnapshotSet& reference,
                                 double cell_volume, const Grid2D* grid2d);

/// Smallest q whose error is below `threshold`. Throws ErrorCode::invalid_input
/// when the table is empty, mismatched or q is not strictly increasing.
std::optional<int> select_modes_by_threshold(const std::vector<int>& modes,
                                             const std::vector<double>& errors,
                                             double threshold);

struct TimestepResult {
  double dt = 0.0;
  double mean_solution_error = 0.0;
  bool stable = true;
};

struct TimestepSweep {
  std::vector<TimestepResult> rows;
  /// Largest stable dt whose mean error is at most kDegradationFactor times
  /// the error of the smallest stable dt.
  std::optional<double> selected_dt;
};

inline constexpr double kDegradationFactor = 1.25;

using TimestepRunner = std::function<TimestepResult(double dt)>;
TimestepSweep timestep_sweep(const TimestepRunner& runner, std::vector<double> dts);
std::optional<double> select_timestep(const std::vector<TimestepResult>& rows);

/// Periodic linear interpolation from a cell-centered 1D grid.
Vector interpolate_periodic(const Grid1D& from, const Vector& values, const Grid1D& to);
/// Periodic bilinear interpolation between cell-centered 2D grids.
Vector interpolate_periodic(const Grid2D& from, const Vector& values, const Grid2D& to);

struct CoarseComparison {
  Trajectory coarse;        ///< states on the coarse grid
  Trajectory prolonged;     ///< states interpolated to the fine grid
  MetricSeries metrics;
  double stepping_seconds = 0.0;
};

/// Coarse full-order run: restrict the fine initial state to the coarse grid
/// by periodic (bi)linear interpolation, integrate with `spec`, prolong each
/// recorded state back and compare to `reference`. Throws ErrorCode::grid_mismatch
/// when the fine resolution is not divisible by `factor`.
CoarseComparison coarse_fom_comparison(const FomModel& fine, int factor,
                                       const IntegratorSpec& spec,
                                       const SnapshotSet& reference);

/// 1D variant with an explicit coarse point count (DOF-matched comparison).
CoarseComparison coarse_fom_comparison_1d(const FomModel& fine, int coarse_n,
                                          const IntegratorSpec& spec,
                                          const SnapshotSet& reference);

}  // namespace rombox
