#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rombox/fom.hpp"
#include "rombox/harness/config.hpp"
#include "rombox/metrics.hpp"
#include "rombox/pod_basis.hpp"
#include "rombox/rom.hpp"
#include "rombox/snapshots.hpp"

namespace rombox::harness {

/// Worker count for sweeps: ROMBOX_THREADS when set (>= 1), else the
/// hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
/// is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Full-order reference data for one case.
struct CaseData {
  ExperimentConfig config;
  FomModel fom;
  SnapshotSet snapshots;
  double fom_seconds = 0.0;  ///< mean stepping time per replica (0 when loaded from file)
};

FomModel build_fom(const ExperimentConfig& config);
StateVector initial_state(const FomModel& fom);
std::vector<Split> split_labels(const ExperimentConfig& config, const std::vector<double>& times);

/// Runs the FOM (timed over `replicas` runs) or loads config.snapshots.
CaseData prepare_case(const ExperimentConfig& config, int replicas = 1);

/// Wraps an existing snapshot set (meta must match the config's grid).
CaseData case_from_snapshots(const ExperimentConfig& config, SnapshotSet snapshots);

struct MethodSpec {
  PodVariant variant = PodVariant::lopod;
  int subdomains_x = 1;
  int subdomains_y = 1;
  int modes = 1;  ///< q for local variants, r for gpod
};

MethodSpec method_spec(const ExperimentConfig& config);

/// Layout matching the case grid; overlap for lopod.
SubdomainLayout case_layout(const FomModel& fom, const MethodSpec& spec);

/// Basis trained on the train split.
PodBasis build_basis(const CaseData& data, const MethodSpec& spec);

/// "31", "10 x 6 = 60", "8^2 x 20 = 1280".
std::string dof_label(const PodBasis& basis);

struct MethodRun {
  std::string method;
  std::string dof_label;
  Index dof = 0;
  double dt = 0.0;
  Scheme scheme = Scheme::rk4;
  bool stable = true;
  MetricSeries metrics;
  double stepping_seconds = 0.0;  ///< mean over replicas
  std::shared_ptr<const RomModel> model;  ///< null for full-order rows
  Trajectory reduced;
};

/// Snapshot stride that records the ROM at the reference sampling interval.
int recording_stride(const ExperimentConfig& config, double dt);

MethodRun run_method(const CaseData& data, std::shared_ptr<const PodBasis> basis, double dt,
                     Scheme scheme, int replicas = 1);

MethodRun run_coarse(const CaseData& data, int factor, double dt, int replicas = 1);

/// FOM row: zero error by definition, timing from prepare_case.
MethodRun fom_row(const CaseData& data);

/// Mean of series values whose time lies in (t_lo, t_hi].
double mean_in_window(const std::vector<double>& times, const std::vector<double>& values,
                      double t_lo, double t_hi);

struct ProjectionSweepRow {
  int subdomains_x = 1;
  int subdomains_y = 1;
  int modes = 0;
  Split split = Split::train;
  double mean_error = 0.0;
  std::string failure;  ///< non-empty when the row could not be computed
};

/// Train and validation projection errors for each (I, q) pair. One SVD per
/// layout; rows keep the input order (I major, q minor, train before validation).
std::vector<ProjectionSweepRow> projection_sweep(const CaseData& data, PodVariant variant,
                                                 const std::vector<std::pair<int, int>>& layouts,
                                                 const std::vector<int>& modes, int threads);

/// Mean solution error over the whole run per dt.
TimestepSweep rom_dt_sweep(const CaseData& data, std::shared_ptr<const PodBasis> basis,
                           Scheme scheme, const std::vector<double>& dts, int threads);
TimestepSweep coarse_dt_sweep(const CaseData& data, int factor, const std::vector<double>& dts,
                              int threads);

struct Table1Options {
  int gpod_rank = 31;
  int lpod_subdomains = 8;
  int lpod_modes = 20;
  int lopod_subdomains = 8;
  int lopod_modes = 15;
  int coarse_factor = 2;
  /// Fixed steps; an unset step is chosen by the time-step sweep rule over
  /// `candidate_dts`.
  std::optional<double> gpod_dt, lpod_dt, lopod_dt, coarse_dt;
  std::vector<double> candidate_dts{0.4, 0.2, 0.1, 0.08, 0.05, 0.04, 0.025, 0.02, 0.0125};
  int replicas = 5;
  int threads = 1;
};

struct Table1Result {
  std::vector<MethodRun> runs;  ///< gpod, lpod, lopod, coarse_fom, fom
  std::vector<std::pair<std::string, TimestepSweep>> sweeps;
};

/// Throws ErrorCode::invalid_input when a sweep finds no stable step.
Table1Result table1_runs(const CaseData& data, const Table1Options& options);

}  // namespace rombox::harness
