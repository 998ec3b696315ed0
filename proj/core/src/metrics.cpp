#include "rombox/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "rombox/error.hpp"

namespace rombox {
namespace {

constexpr double kTimeMatch = 1e-9;

double mean_of(const std::vector<double>& values, const char* what) {
  if (values.empty()) {
    throw Error(ErrorCode::undefined_metric, std::string("no recorded ") + what);
  }
  return std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
}

// Reference column for each recorded time, or -1 when no snapshot matches.
std::vector<Index> match_times(const std::vector<double>& times, const SnapshotSet& reference) {
  std::vector<Index> matched(times.size(), -1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    while (j < reference.times.size() && reference.times[j] < times[i] - kTimeMatch) ++j;
    if (j < reference.times.size() && std::abs(reference.times[j] - times[i]) <= kTimeMatch) {
      matched[i] = static_cast<Index>(j);
    }
  }
  return matched;
}

double sample_1d(const Grid1D& grid, const Vector& values, double x) {
  const double s = x / grid.h - 0.5;
  const double fl = std::floor(s);
  const double w = s - fl;
  const auto i0 = static_cast<long>(fl);
  const long n = grid.n;
  const auto wrap = [n](long i) { return static_cast<Index>(((i % n) + n) % n); };
  return (1.0 - w) * values[wrap(i0)] + w * values[wrap(i0 + 1)];
}

double sample_2d(const Grid2D& grid, const Vector& values, double x, double y) {
  const double sx = (x - grid.x_min) / grid.hx - 0.5;
  const double sy = (y - grid.y_min) / grid.hy - 0.5;
  const double fx = std::floor(sx);
  const double fy = std::floor(sy);
  const double wx = sx - fx;
  const double wy = sy - fy;
  const int i0 = static_cast<int>(fx);
  const int j0 = static_cast<int>(fy);
  return (1.0 - wx) * (1.0 - wy) * values[grid.index(i0, j0)] +
         wx * (1.0 - wy) * values[grid.index(i0 + 1, j0)] +
         (1.0 - wx) * wy * values[grid.index(i0, j0 + 1)] +
         wx * wy * values[grid.index(i0 + 1, j0 + 1)];
}

CoarseComparison run_coarse(const FomModel& coarse_model, const SnapshotSet& reference,
                            const IntegratorSpec& spec,
                            const std::function<Vector(const Vector&)>& restrict_state,
                            const std::function<Vector(const Vector&)>& prolong_state,
                            double fine_volume, const Grid2D* fine_grid) {
  if (reference.count() == 0) throw Error(ErrorCode::empty_snapshot, "empty reference");
  const Vector coarse0 = restrict_state(reference.data.col(0));
  CoarseComparison out;
  const auto start = std::chrono::steady_clock::now();
  out.coarse = integrate(as_linear_map(coarse_model.rhs), coarse0, spec, reference.times.front());
  out.stepping_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.prolonged.times = out.coarse.times;
  out.prolonged.stable = out.coarse.stable;
  out.prolonged.states.reserve(out.coarse.states.size());
  for (const auto& s : out.coarse.states) out.prolonged.states.push_back(prolong_state(s));
  out.metrics = state_metric_series(out.prolonged, reference, fine_volume, fine_grid);
  return out;
}

}  // namespace

ErrorDecomposition error_decomposition(const Vector& rom_state, const Vector& fom_state,
                                       const PodBasis& basis) {
  if (rom_state.size() != fom_state.size()) {
    throw Error(ErrorCode::grid_mismatch, "ROM and FOM states differ in size");
  }
  const double norm = fom_state.norm();
  if (norm == 0.0) throw Error(ErrorCode::undefined_metric, "reference state has zero norm");
  const Vector projected = basis.projector_apply(fom_state);
  ErrorDecomposition d;
  d.solution = (rom_state - fom_state) / norm;
  d.rom = (rom_state - projected) / norm;
  d.projection = (projected - fom_state) / norm;
  d.solution_norm = d.solution.norm();
  d.rom_norm = d.rom.norm();
  d.projection_norm = d.projection.norm();
  return d;
}

double relative_error(const Vector& state, const Vector& reference) {
  if (state.size() != reference.size()) {
    throw Error(ErrorCode::grid_mismatch, "states differ in size");
  }
  const double norm = reference.norm();
  if (norm == 0.0) throw Error(ErrorCode::undefined_metric, "reference state has zero norm");
  return (state - reference).norm() / norm;
}

EnergyRate energy_rate(const RomModel& model, const Vector& coefficients) {
  const Matrix& gram = model.basis->gram();
  const Vector y = rom_rhs(model, coefficients);
  EnergyRate rate;
  rate.absolute = model.cell_volume * coefficients.dot(gram * y);
  const double norm_a = std::sqrt(std::max(0.0, coefficients.dot(gram * coefficients)));
  const double norm_y = std::sqrt(std::max(0.0, y.dot(gram * y)));
  const double scale = model.cell_volume * norm_a * norm_y;
  rate.relative = scale > 0.0 ? std::abs(rate.absolute) / scale : 0.0;
  return rate;
}

EnergyDiagnostics energy_diagnostics(const Trajectory& reduced, const RomModel& model) {
  EnergyDiagnostics d;
  d.times = reduced.times;
  for (const auto& a : reduced.states) {
    d.energy.push_back(reduced_energy(model, a));
    const EnergyRate r = energy_rate(model, a);
    d.rate.push_back(r.absolute);
    d.relative_rate.push_back(r.relative);
  }
  const double e0 = d.energy.empty() ? 0.0 : d.energy.front();
  for (double e : d.energy) d.drift.push_back(e0 != 0.0 ? (e - e0) / e0 : 0.0);
  return d;
}

EnergyDiagnostics fom_energy_series(const Trajectory& trajectory, double cell_volume) {
  EnergyDiagnostics d;
  d.times = trajectory.times;
  for (const auto& u : trajectory.states) d.energy.push_back(0.5 * cell_volume * u.squaredNorm());
  const double e0 = d.energy.empty() ? 0.0 : d.energy.front();
  for (double e : d.energy) d.drift.push_back(e0 != 0.0 ? (e - e0) / e0 : 0.0);
  return d;
}

Vector forward_gradient(const Grid2D& grid, const Vector& values) {
  const Index n = grid.cell_count();
  if (values.size() != n) throw Error(ErrorCode::grid_mismatch, "field does not match the grid");
  Vector g(2 * n);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Index k = grid.index(i, j);
      g[k] = (values[grid.index(i + 1, j)] - values[k]) / grid.hx;
      g[n + k] = (values[grid.index(i, j + 1)] - values[k]) / grid.hy;
    }
  }
  return g;
}

double gradient_error(const Vector& state, const Vector& reference, const Grid2D& grid) {
  const Vector g_ref = forward_gradient(grid, reference);
  const double norm = g_ref.norm();
  if (norm == 0.0) throw Error(ErrorCode::undefined_metric, "reference gradient vanishes");
  return (forward_gradient(grid, state) - g_ref).norm() / norm;
}

double MetricSeries::mean_solution_error() const { return mean_of(solution_error, "solution errors"); }

double MetricSeries::mean_gradient_error() const {
  if (!gradient_error) throw Error(ErrorCode::undefined_metric, "no gradient errors recorded");
  return mean_of(*gradient_error, "gradient errors");
}

MetricSeries rom_metric_series(const RomModel& model, const Trajectory& reduced,
                               const SnapshotSet& reference) {
  const PodBasis& basis = *model.basis;
  if (reference.state_size() != basis.state_size()) {
    throw Error(ErrorCode::grid_mismatch, "reference snapshots do not match the basis");
  }
  std::optional<Grid2D> grid;
  if (model.dims == 2) {
    const auto& m = reference.meta;
    grid = build_grid_2d(m.nx, m.ny, -0.5 * m.length_x, 0.5 * m.length_x, -0.5 * m.length_y,
                         0.5 * m.length_y);
  }
  MetricSeries series;
  series.stable = reduced.stable;
  if (grid) series.gradient_error.emplace();
  const auto matched = match_times(reduced.times, reference);
  for (std::size_t i = 0; i < reduced.states.size(); ++i) {
    if (matched[i] < 0) continue;
    const Vector& a = reduced.states[i];
    const Vector u_fom = reference.data.col(matched[i]);
    const Vector u_rom = basis.reconstruct(a);
    const ErrorDecomposition d = error_decomposition(u_rom, u_fom, basis);
    series.times.push_back(reduced.times[i]);
    series.solution_error.push_back(d.solution_norm);
    series.rom_error.push_back(d.rom_norm);
    series.projection_error.push_back(d.projection_norm);
    series.energy.push_back(reduced_energy(model, a));
    series.energy_rate.push_back(energy_rate(model, a).absolute);
    if (grid) series.gradient_error->push_back(gradient_error(u_rom, u_fom, *grid));
  }
  return series;
}

MetricSeries state_metric_series(const Trajectory& states, const SnapshotSet& reference,
                                 double cell_volume, const Grid2D* grid2d) {
  MetricSeries series;
  series.stable = states.stable;
  if (grid2d) series.gradient_error.emplace();
  const auto matched = match_times(states.times, reference);
  for (std::size_t i = 0; i < states.states.size(); ++i) {
    if (matched[i] < 0) continue;
    const Vector& u = states.states[i];
    const Vector u_fom = reference.data.col(matched[i]);
    series.times.push_back(states.times[i]);
    series.solution_error.push_back(relative_error(u, u_fom));
    series.energy.push_back(0.5 * cell_volume * u.squaredNorm());
    if (grid2d) series.gradient_error->push_back(gradient_error(u, u_fom, *grid2d));
  }
  return series;
}

std::optional<int> select_modes_by_threshold(const std::vector<int>& modes,
                                             const std::vector<double>& errors,
                                             double threshold) {
  if (modes.empty() || modes.size() != errors.size()) {
    throw Error(ErrorCode::invalid_input, "mode table must be nonempty with one error per q");
  }
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (modes[i] <= modes[i - 1]) {
      throw Error(ErrorCode::invalid_input, "mode counts must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (errors[i] < threshold) return modes[i];
  }
  return std::nullopt;
}

std::optional<double> select_timestep(const std::vector<TimestepResult>& rows) {
  const TimestepResult* smallest = nullptr;
  for (const auto& row : rows) {
    if (row.stable && std::isfinite(row.mean_solution_error) && (!smallest || row.dt < smallest->dt)) {
      smallest = &row;
    }
  }
  if (!smallest) return std::nullopt;
  const double limit = kDegradationFactor * smallest->mean_solution_error;
  double best = smallest->dt;
  for (const auto& row : rows) {
    if (row.stable && row.mean_solution_error <= limit && row.dt > best) best = row.dt;
  }
  return best;
}

TimestepSweep timestep_sweep(const TimestepRunner& runner, std::vector<double> dts) {
  if (dts.empty()) throw Error(ErrorCode::invalid_input, "empty time-step list");
  for (double dt : dts) {
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_input, "time steps must be positive");
  }
  std::sort(dts.begin(), dts.end());
  TimestepSweep sweep;
  for (double dt : dts) {
    TimestepResult row = runner(dt);
    row.dt = dt;
    sweep.rows.push_back(row);
  }
  sweep.selected_dt = select_timestep(sweep.rows);
  return sweep;
}

Vector interpolate_periodic(const Grid1D& from, const Vector& values, const Grid1D& to) {
  if (values.size() != from.n) throw Error(ErrorCode::grid_mismatch, "field does not match the grid");
  if (std::abs(from.length - to.length) > 1e-12 * from.length) {
    throw Error(ErrorCode::grid_mismatch, "grids cover different domains");
  }
  Vector out(to.n);
  for (int i = 0; i < to.n; ++i) out[i] = sample_1d(from, values, to.centers[i]);
  return out;
}

Vector interpolate_periodic(const Grid2D& from, const Vector& values, const Grid2D& to) {
  if (values.size() != from.cell_count()) {
    throw Error(ErrorCode::grid_mismatch, "field does not match the grid");
  }
  const double tol = 1e-12 * (from.length_x() + from.length_y());
  if (std::abs(from.x_min - to.x_min) > tol || std::abs(from.x_max - to.x_max) > tol ||
      std::abs(from.y_min - to.y_min) > tol || std::abs(from.y_max - to.y_max) > tol) {
    throw Error(ErrorCode::grid_mismatch, "grids cover different domains");
  }
  Vector out(to.cell_count());
  for (int j = 0; j < to.ny; ++j) {
    for (int i = 0; i < to.nx; ++i) {
      out[to.index(i, j)] = sample_2d(from, values, to.x_center(i), to.y_center(j));
    }
  }
  return out;
}

CoarseComparison coarse_fom_comparison(const FomModel& fine, int factor,
                                       const IntegratorSpec& spec,
                                       const SnapshotSet& reference) {
  if (factor < 1) throw Error(ErrorCode::grid_mismatch, "coarsening factor must be >= 1");
  if (reference.state_size() != fine.size()) {
    throw Error(ErrorCode::grid_mismatch, "reference does not match the fine model");
  }
  if (fine.dimension() == 1) {
    const Grid1D& g = fine.grid_1d();
    if (g.n % factor != 0) {
      throw Error(ErrorCode::grid_mismatch, "fine resolution " + std::to_string(g.n) +
                                                " is not divisible by " + std::to_string(factor));
    }
    return coarse_fom_comparison_1d(fine, g.n / factor, spec, reference);
  }
  const Grid2D& g = fine.grid_2d();
  if (g.nx % factor != 0 || g.ny % factor != 0) {
    throw Error(ErrorCode::grid_mismatch, "fine resolution " + std::to_string(g.nx) + "x" +
                                              std::to_string(g.ny) + " is not divisible by " +
                                              std::to_string(factor));
  }
  const Grid2D coarse =
      build_grid_2d(g.nx / factor, g.ny / factor, g.x_min, g.x_max, g.y_min, g.y_max);
  const VelocityField field = fine.field ? fine.field : default_velocity();
  const FomModel model = build_fom_2d(coarse, field, fine.nu);
  return run_coarse(
      model, reference, spec,
      [&](const Vector& u) { return interpolate_periodic(g, u, coarse); },
      [&](const Vector& u) { return interpolate_periodic(coarse, u, g); }, fine.cell_volume(), &g);
}

CoarseComparison coarse_fom_comparison_1d(const FomModel& fine, int coarse_n,
                                          const IntegratorSpec& spec,
                                          const SnapshotSet& reference) {
  const Grid1D& g = fine.grid_1d();
  if (reference.state_size() != fine.size()) {
    throw Error(ErrorCode::grid_mismatch, "reference does not match the fine model");
  }
  const Grid1D coarse = build_grid_1d(coarse_n, g.length);
  const FomModel model = build_fom_1d(coarse, fine.c);
  return run_coarse(
      model, reference, spec,
      [&](const Vector& u) { return interpolate_periodic(g, u, coarse); },
      [&](const Vector& u) { return interpolate_periodic(coarse, u, g); }, fine.cell_volume(),
      nullptr);
}

}  // namespace rombox
