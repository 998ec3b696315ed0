#include "rombox/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "rombox/error.hpp"
#include "rombox/svd.hpp"

namespace rombox::harness {

int worker_count() {
  if (const char* env = std::getenv("ROMBOX_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1, threads));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

FomModel build_fom(const ExperimentConfig& config) {
  if (config.kind == CaseKind::adv1d) {
    return build_fom_1d(build_grid_1d(config.nx, config.length), config.c);
  }
  const double half = 0.5 * config.length;
  return build_fom_2d(build_grid_2d(config.nx, config.ny, -half, half, -half, half),
                      default_velocity(), config.nu);
}

StateVector initial_state(const FomModel& fom) {
  return fom.dimension() == 1 ? initial_condition_1d(fom.grid_1d())
                              : initial_condition_2d(fom.grid_2d());
}

std::vector<Split> split_labels(const ExperimentConfig& config, const std::vector<double>& times) {
  if (config.val_start > config.train_end) {
    return label_splits(times, config.train_end, config.val_start, config.val_end);
  }
  return label_splits(times, config.train_end, config.val_end);
}

CaseData case_from_snapshots(const ExperimentConfig& config, SnapshotSet snapshots) {
  CaseData data;
  data.config = config;
  data.fom = build_fom(config);
  if (snapshots.state_size() != data.fom.size() || snapshots.meta.dims != config.dims()) {
    throw Error(ErrorCode::grid_mismatch,
                "snapshots hold " + std::to_string(snapshots.state_size()) +
                    " values per state but the configured grid has " +
                    std::to_string(data.fom.size()));
  }
  snapshots.split = split_labels(config, snapshots.times);
  data.snapshots = std::move(snapshots);
  return data;
}

CaseData prepare_case(const ExperimentConfig& config, int replicas) {
  if (config.snapshots) return case_from_snapshots(config, load_snapshots(*config.snapshots));
  CaseData data;
  data.config = config;
  data.fom = build_fom(config);
  const IntegratorSpec spec = config.fom_spec();
  const Vector u0 = initial_state(data.fom).values;
  const LinearMap map = as_linear_map(data.fom.rhs);
  Trajectory trajectory;
  double total = 0.0;
  for (int k = 0; k < std::max(1, replicas); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Trajectory run = integrate(map, u0, spec);
    total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (k == 0) trajectory = std::move(run);
  }
  data.fom_seconds = total / std::max(1, replicas);
  if (!trajectory.stable) {
    throw Error(ErrorCode::invalid_input, "full-order run became unstable at dt " +
                                              std::to_string(config.dt));
  }
  auto labels = split_labels(config, trajectory.times);
  data.snapshots = make_snapshot_set(trajectory, grid_meta(data.fom, spec), std::move(labels));
  return data;
}

MethodSpec method_spec(const ExperimentConfig& config) {
  MethodSpec spec;
  spec.variant = parse_variant(config.method);
  spec.subdomains_x = config.subdomains_x;
  spec.subdomains_y = config.dims() == 2 ? config.subdomains_y : 1;
  spec.modes = spec.variant == PodVariant::gpod ? config.rank : config.modes;
  return spec;
}

SubdomainLayout case_layout(const FomModel& fom, const MethodSpec& spec) {
  const LayoutMode mode =
      spec.variant == PodVariant::lopod ? LayoutMode::overlap : LayoutMode::nonoverlap;
  if (fom.dimension() == 1) return build_layout(fom.grid_1d(), spec.subdomains_x, mode);
  return build_layout(fom.grid_2d(), spec.subdomains_x, spec.subdomains_y, mode);
}

namespace {

/// SVD of the training data arranged for the given variant and layout.
struct TrainingSvd {
  SvdResult svd;
  std::optional<SubdomainLayout> layout;
  std::optional<KernelSpec> kernel;
};

TrainingSvd training_svd(const CaseData& data, const MethodSpec& spec, std::optional<Index> keep) {
  TrainingSvd out;
  Matrix matrix;
  if (spec.variant == PodVariant::gpod) {
    matrix = assemble_global(data.snapshots, {Split::train});
  } else {
    out.layout = case_layout(data.fom, spec);
    if (spec.variant == PodVariant::lopod) {
      out.kernel = default_kernel(*out.layout);
      matrix = assemble_local_overlap(data.snapshots, *out.layout, *out.kernel, {Split::train}).data;
    } else {
      matrix = assemble_local(data.snapshots, *out.layout, {Split::train}).data;
    }
  }
  out.svd = keep ? truncated_svd(matrix, *keep) : thin_svd(matrix);
  return out;
}

PodBasis basis_from(const TrainingSvd& t, PodVariant variant, Index modes) {
  switch (variant) {
    case PodVariant::gpod: return build_gpod(t.svd, modes);
    case PodVariant::lpod: return build_lpod(t.svd, *t.layout, modes);
    case PodVariant::lopod: return build_lopod(t.svd, *t.layout, *t.kernel, modes);
  }
  throw Error(ErrorCode::invalid_input, "unknown variant");
}

TimestepResult cached_result(const std::vector<TimestepResult>& results, double dt) {
  for (const auto& r : results) {
    if (r.dt == dt) return r;
  }
  throw Error(ErrorCode::invalid_input, "no cached run for dt " + std::to_string(dt));
}

}  // namespace

PodBasis build_basis(const CaseData& data, const MethodSpec& spec) {
  if (spec.modes < 1) throw Error(ErrorCode::dimension, "need at least one mode");
  return basis_from(training_svd(data, spec, spec.modes), spec.variant, spec.modes);
}

std::string dof_label(const PodBasis& basis) {
  std::ostringstream out;
  if (!basis.is_local()) {
    out << basis.rank();
    return out.str();
  }
  const SubdomainLayout& layout = *basis.layout();
  if (layout.dims == 2 && layout.count_x == layout.count_y) {
    out << layout.count_x << "^2";
  } else if (layout.dims == 2) {
    out << layout.count_x << "x" << layout.count_y;
  } else {
    out << layout.count_x;
  }
  out << " x " << basis.modes_per_subdomain() << " = " << basis.rank();
  return out.str();
}

int recording_stride(const ExperimentConfig& config, double dt) {
  const double interval = config.dt * config.stride;
  const double k = std::round(interval / dt);
  if (k >= 1.0 && std::abs(k * dt - interval) <= 1e-9) return static_cast<int>(k);
  return 1;
}

MethodRun run_method(const CaseData& data, std::shared_ptr<const PodBasis> basis, double dt,
                     Scheme scheme, int replicas) {
  auto model = std::make_shared<const RomModel>(galerkin_project(basis, data.fom));
  const IntegratorSpec spec{scheme, dt, data.config.t_end, recording_stride(data.config, dt)};
  const Vector u0 = data.snapshots.data.col(0);
  MethodRun run;
  run.method = to_string(basis->variant());
  run.dof = basis->rank();
  run.dof_label = dof_label(*basis);
  run.dt = dt;
  run.scheme = scheme;
  const int n = std::max(1, replicas);
  double total = 0.0;
  std::optional<CrankNicolsonStepper> stepper;
  if (scheme == Scheme::crank_nicolson) {
    stepper.emplace(rom_cn_stepper(*model, dt));
  }
  for (int k = 0; k < n; ++k) {
    RomRun r = stepper ? run_rom(*model, *stepper, u0, spec) : run_rom(*model, u0, spec);
    total += r.stepping_seconds;
    if (k == 0) run.reduced = std::move(r.reduced);
  }
  run.stepping_seconds = total / n;
  run.metrics = rom_metric_series(*model, run.reduced, data.snapshots);
  run.stable = run.metrics.stable;
  run.model = std::move(model);
  return run;
}

MethodRun run_coarse(const CaseData& data, int factor, double dt, int replicas) {
  const IntegratorSpec spec{Scheme::rk4, dt, data.config.t_end, recording_stride(data.config, dt)};
  MethodRun run;
  run.method = "coarse_fom";
  run.dt = dt;
  run.scheme = Scheme::rk4;
  const int n = std::max(1, replicas);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    CoarseComparison c = coarse_fom_comparison(data.fom, factor, spec, data.snapshots);
    total += c.stepping_seconds;
    if (k == 0) {
      run.metrics = std::move(c.metrics);
      run.dof = c.coarse.states.empty() ? 0 : c.coarse.states.front().size();
    }
  }
  run.stepping_seconds = total / n;
  run.stable = run.metrics.stable;
  if (data.fom.dimension() == 2) {
    const Grid2D& g = data.fom.grid_2d();
    run.dof_label = std::to_string(g.nx / factor) + "^2 = " + std::to_string(run.dof);
  } else {
    run.dof_label = std::to_string(run.dof);
  }
  return run;
}

MethodRun fom_row(const CaseData& data) {
  MethodRun run;
  run.method = "fom";
  run.dof = data.fom.size();
  if (data.fom.dimension() == 2) {
    const Grid2D& g = data.fom.grid_2d();
    run.dof_label = std::to_string(g.nx) + "^2 = " + std::to_string(run.dof);
  } else {
    run.dof_label = std::to_string(run.dof);
  }
  run.dt = data.config.dt;
  run.stepping_seconds = data.fom_seconds;
  run.metrics.times = data.snapshots.times;
  run.metrics.solution_error.assign(data.snapshots.times.size(), 0.0);
  if (data.fom.dimension() == 2) run.metrics.gradient_error = run.metrics.solution_error;
  return run;
}

double mean_in_window(const std::vector<double>& times, const std::vector<double>& values,
                      double t_lo, double t_hi) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < times.size() && i < values.size(); ++i) {
    if (times[i] > t_lo + 1e-9 && times[i] <= t_hi + 1e-9) {
      sum += values[i];
      ++count;
    }
  }
  if (count == 0) {
    throw Error(ErrorCode::undefined_metric, "no samples in the requested time window");
  }
  return sum / count;
}

std::vector<ProjectionSweepRow> projection_sweep(const CaseData& data, PodVariant variant,
                                                 const std::vector<std::pair<int, int>>& layouts,
                                                 const std::vector<int>& modes, int threads) {
  const std::size_t per_layout = modes.size() * 2;
  std::vector<ProjectionSweepRow> rows(layouts.size() * per_layout);
  for (std::size_t l = 0; l < layouts.size(); ++l) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      for (int s = 0; s < 2; ++s) {
        auto& row = rows[l * per_layout + m * 2 + s];
        row.subdomains_x = layouts[l].first;
        row.subdomains_y = layouts[l].second;
        row.modes = modes[m];
        row.split = s == 0 ? Split::train : Split::validation;
      }
    }
  }
  parallel_for(layouts.size(), threads, [&](std::size_t l) {
    const MethodSpec layout_spec{variant, layouts[l].first, layouts[l].second, 1};
    std::optional<TrainingSvd> svd;
    std::string layout_failure;
    try {
      svd.emplace(training_svd(data, layout_spec, std::nullopt));
    } catch (const std::exception& e) {
      layout_failure = e.what();
    }
    for (std::size_t m = 0; m < modes.size(); ++m) {
      auto* train = &rows[l * per_layout + m * 2];
      auto* val = train + 1;
      try {
        if (!svd) throw Error(ErrorCode::layout, layout_failure);
        if (modes[m] < 1 || modes[m] > svd->svd.left.cols()) {
          throw Error(ErrorCode::dimension, "q = " + std::to_string(modes[m]) +
                                                " exceeds the " +
                                                std::to_string(svd->svd.left.cols()) +
                                                " available modes");
        }
        const PodBasis basis = basis_from(*svd, variant, modes[m]);
        train->mean_error = projection_error(basis, data.snapshots, {Split::train}).mean;
        val->mean_error = projection_error(basis, data.snapshots, {Split::validation}).mean;
      } catch (const std::exception& e) {
        train->failure = val->failure = e.what();
        train->mean_error = val->mean_error = std::nan("");
      }
    }
  });
  return rows;
}

TimestepSweep rom_dt_sweep(const CaseData& data, std::shared_ptr<const PodBasis> basis,
                           Scheme scheme, const std::vector<double>& dts, int threads) {
  std::vector<TimestepResult> results(dts.size());
  parallel_for(dts.size(), threads, [&](std::size_t i) {
    TimestepResult r;
    r.dt = dts[i];
    try {
      const MethodRun run = run_method(data, basis, dts[i], scheme, 1);
      r.stable = run.stable;
      r.mean_solution_error =
          run.metrics.solution_error.empty() ? std::nan("") : run.metrics.mean_solution_error();
    } catch (const Error&) {
      r.stable = false;
      r.mean_solution_error = std::nan("");
    }
    results[i] = r;
  });
  return timestep_sweep([&](double dt) { return cached_result(results, dt); }, dts);
}

TimestepSweep coarse_dt_sweep(const CaseData& data, int factor, const std::vector<double>& dts,
                              int threads) {
  std::vector<TimestepResult> results(dts.size());
  parallel_for(dts.size(), threads, [&](std::size_t i) {
    TimestepResult r;
    r.dt = dts[i];
    try {
      const MethodRun run = run_coarse(data, factor, dts[i], 1);
      r.stable = run.stable;
      r.mean_solution_error =
          run.metrics.solution_error.empty() ? std::nan("") : run.metrics.mean_solution_error();
    } catch (const Error&) {
      r.stable = false;
      r.mean_solution_error = std::nan("");
    }
    results[i] = r;
  });
  return timestep_sweep([&](double dt) { return cached_result(results, dt); }, dts);
}

Table1Result table1_runs(const CaseData& data, const Table1Options& o) {
  Table1Result result;
  auto pick = [&](const std::string& name, const std::optional<double>& fixed,
                  const std::function<TimestepSweep()>& sweep) {
    if (fixed) return *fixed;
    TimestepSweep s = sweep();
    result.sweeps.emplace_back(name, s);
    if (!s.selected_dt) throw Error(ErrorCode::invalid_input, name + ": no stable time step");
    return *s.selected_dt;
  };
  auto rom_row = [&](const MethodSpec& spec, Scheme scheme, const std::optional<double>& fixed) {
    auto basis = std::make_shared<const PodBasis>(build_basis(data, spec));
    const std::string name = to_string(spec.variant);
    const double dt = pick(name, fixed, [&] {
      return rom_dt_sweep(data, basis, scheme, o.candidate_dts, o.threads);
    });
    result.runs.push_back(run_method(data, basis, dt, scheme, o.replicas));
  };
  rom_row({PodVariant::gpod, 1, 1, o.gpod_rank}, Scheme::rk4, o.gpod_dt);
  rom_row({PodVariant::lpod, o.lpod_subdomains, o.lpod_subdomains, o.lpod_modes}, Scheme::rk4,
          o.lpod_dt);
  rom_row({PodVariant::lopod, o.lopod_subdomains, o.lopod_subdomains, o.lopod_modes},
          Scheme::crank_nicolson, o.lopod_dt);
  const double coarse_dt = pick("coarse_fom", o.coarse_dt, [&] {
    return coarse_dt_sweep(data, o.coarse_factor, o.candidate_dts, o.threads);
  });
  result.runs.push_back(run_coarse(data, o.coarse_factor, coarse_dt, o.replicas));
  result.runs.push_back(fom_row(data));
  return result;
}

}  // namespace rombox::harness
