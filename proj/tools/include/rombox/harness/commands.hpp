#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rombox/harness/config.hpp"
#include "rombox/harness/experiments.hpp"

namespace rombox::harness {

namespace fs = std::filesystem;

/// Snapshot file plus a config for the physics the file does not store
/// (c, nu). Grid, sampling and t_end come from the file; split labels stay as
/// written.
CaseData load_case(const fs::path& snapshots, std::optional<ExperimentConfig> config);

/// Writes snapshots.rsnp, fom_metrics.csv (time, energy) and summary_fom.csv.
int cmd_fom(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log);

struct PodArgs {
  fs::path snapshots;
  std::string method = "lopod";
  std::vector<int> subdomains;  ///< I or Ix,Iy; ignored for gpod
  std::optional<int> modes;
  std::optional<int> rank;
  fs::path out;                 ///< basis file; projection CSV goes next to it
  std::optional<ExperimentConfig> config;
};

/// Builds the basis on the train split, writes the RPOD file and
/// <stem>_projection.csv (time, split, proj_err).
int cmd_pod(const PodArgs& args, std::ostream& log);

struct RomArgs {
  fs::path basis;
  fs::path snapshots;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<Scheme> integrator;
  int replicas = 1;
  fs::path out_dir;
  std::optional<ExperimentConfig> config;
};

/// Writes metrics.csv, trajectory.csv and summary_<method>.csv.
int cmd_rom(const RomArgs& args, std::ostream& log);

struct CoarseArgs {
  fs::path snapshots;
  int factor = 2;
  double dt = 0.1;
  int replicas = 1;
  fs::path out_dir;
  std::optional<ExperimentConfig> config;
};

/// Coarse full-order comparison; writes metrics_coarse_fom.csv and summary_coarse_fom.csv.
int cmd_coarse(const CoarseArgs& args, std::ostream& log);

enum class SweepKind { subdomains, modes, dt };
SweepKind parse_sweep_kind(const std::string& name);

/// subdomains/modes: subdomains_x, subdomains_y, modes, split, mean_proj_err, failure.
/// dt: dt, mean_sol_err, stable, selected.
/// An empty range logs a warning and writes nothing.
int cmd_sweep(SweepKind kind, const ExperimentConfig& config, const fs::path& out,
              std::ostream& log);

/// One acceptance check on a table entry: |value - target| <= rel_tol * target.
struct Tolerance {
  double target = 0.0;
  double rel_tol = 0.0;
};

/// Keys "<method>.<sol_err|grad_err>" plus "timing_order" (target 1 enables it).
std::map<std::string, Tolerance> default_tolerances();

/// `key = target rel_tol` lines; keys override the defaults.
std::map<std::string, Tolerance> load_tolerances(const fs::path& path);

inline const std::vector<std::string>& table1_methods() {
  static const std::vector<std::string> methods{"gpod", "lpod", "lopod", "coarse_fom", "fom"};
  return methods;
}

/// Reads summary_<method>.csv files, writes table1.csv, report.txt and
/// errors.svg (when metrics_<method>.csv files are present). Nonzero exit
/// when a run is missing or a check fails.
int cmd_report(const fs::path& dir, const std::optional<fs::path>& tolerances, std::ostream& log);

/// Full 2D suite: FOM, the three bases, coarse FOM, summaries and report.
int cmd_table1(const ExperimentConfig& config, const fs::path& out_dir,
               const std::optional<fs::path>& tolerances, std::ostream& log);

/// Summary row shared by rom/coarse/table1.
void write_summary(const MethodRun& run, const fs::path& dir);
void write_metrics(const MetricSeries& metrics, const fs::path& path);

}  // namespace rombox::harness
