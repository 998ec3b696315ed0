#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rombox/error.hpp"
#include "rombox/harness/commands.hpp"
#include "rombox/harness/config.hpp"

namespace {

using namespace rombox::harness;

struct ConfigSource {
  std::string config;
  std::string preset;

  void add(CLI::App* app) {
    app->add_option("--config", config, "experiment config file");
    app->add_option("--preset", preset, "1d-paper or 2d-paper")
        ->check(CLI::IsMember({"1d-paper", "2d-paper"}));
  }

  std::optional<ExperimentConfig> resolve(bool required) const {
    if (!config.empty() && !preset.empty()) {
      throw rombox::Error(rombox::ErrorCode::config,
                          "use either --config or --preset (a config file may name its preset)");
    }
    if (!config.empty()) return load_config(config);
    if (!preset.empty()) return rombox::harness::preset(preset);
    if (required) throw rombox::Error(rombox::ErrorCode::config, "--config or --preset is required");
    return std::nullopt;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rombox: space-local POD reduced models for linear advection"};
  app.require_subcommand(1);

  ConfigSource fom_src;
  std::string fom_out = ".";
  auto* fom = app.add_subcommand("fom", "run the full-order model and write snapshots");
  fom_src.add(fom);
  fom->add_option("--out", fom_out, "output directory");

  ConfigSource pod_src;
  PodArgs pod_args;
  std::string pod_subdomains;
  auto* pod = app.add_subcommand("pod", "build a basis from snapshots");
  pod_src.add(pod);
  pod->add_option("--snapshots", pod_args.snapshots, "RSNP snapshot file")->required();
  pod->add_option("--method", pod_args.method, "gpod, lpod or lopod")
      ->check(CLI::IsMember({"gpod", "lpod", "lopod"}));
  pod->add_option("--subdomains", pod_subdomains, "I or Ix,Iy");
  auto* modes_opt = pod->add_option("--modes", pod_args.modes, "modes per subdomain (q)");
  auto* rank_opt = pod->add_option("--rank", pod_args.rank, "global rank (r)");
  modes_opt->excludes(rank_opt);
  pod->add_option("--out", pod_args.out, "RPOD basis file")->required();

  ConfigSource rom_src;
  RomArgs rom_args;
  std::string rom_integrator;
  auto* rom = app.add_subcommand("rom", "run a reduced model against the reference");
  rom_src.add(rom);
  rom->add_option("--basis", rom_args.basis, "RPOD basis file")->required();
  rom->add_option("--snapshots", rom_args.snapshots, "RSNP reference")->required();
  rom->add_option("--dt", rom_args.dt, "time step");
  rom->add_option("--t-end", rom_args.t_end, "final time");
  rom->add_option("--integrator", rom_integrator, "rk4 or cn")->check(CLI::IsMember({"rk4", "cn"}));
  rom->add_option("--replicas", rom_args.replicas, "timing replicas")->check(CLI::PositiveNumber);
  rom->add_option("--out", rom_args.out_dir, "output directory")->required();

  ConfigSource coarse_src;
  CoarseArgs coarse_args;
  auto* coarse = app.add_subcommand("coarse", "coarse full-order comparison");
  coarse_src.add(coarse);
  coarse->add_option("--snapshots", coarse_args.snapshots, "RSNP reference")->required();
  coarse->add_option("--factor", coarse_args.factor, "coarsening factor per axis")
      ->check(CLI::PositiveNumber);
  coarse->add_option("--dt", coarse_args.dt, "time step")->check(CLI::PositiveNumber);
  coarse->add_option("--replicas", coarse_args.replicas, "timing replicas")->check(CLI::PositiveNumber);
  coarse->add_option("--out", coarse_args.out_dir, "output directory")->required();

  ConfigSource sweep_src;
  std::string sweep_kind;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "projection or time-step sweep");
  sweep_src.add(sweep);
  sweep->add_option("--kind", sweep_kind, "subdomains, modes or dt")
      ->required()
      ->check(CLI::IsMember({"subdomains", "modes", "dt"}));
  sweep->add_option("--out", sweep_out, "output CSV")->required();

  std::string report_dir;
  std::string report_tol;
  auto* report = app.add_subcommand("report", "aggregate summaries into table1.csv");
  report->add_option("--dir", report_dir, "results directory")->required();
  report->add_option("--tolerances", report_tol, "tolerance overrides");

  ConfigSource table_src;
  std::string table_out;
  std::string table_tol;
  auto* table = app.add_subcommand("table1", "run the full 2D comparison and report");
  table_src.add(table);
  table->add_option("--out", table_out, "output directory")->required();
  table->add_option("--tolerances", table_tol, "tolerance overrides");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fom->parsed()) return cmd_fom(*fom_src.resolve(true), fom_out, std::cout);
    if (pod->parsed()) {
      if (!pod_subdomains.empty()) pod_args.subdomains = parse_int_list(pod_subdomains);
      pod_args.config = pod_src.resolve(false);
      return cmd_pod(pod_args, std::cout);
    }
    if (rom->parsed()) {
      if (!rom_integrator.empty()) rom_args.integrator = parse_scheme(rom_integrator);
      rom_args.config = rom_src.resolve(false);
      return cmd_rom(rom_args, std::cout);
    }
    if (coarse->parsed()) {
      coarse_args.config = coarse_src.resolve(false);
      return cmd_coarse(coarse_args, std::cout);
    }
    if (sweep->parsed()) {
      return cmd_sweep(parse_sweep_kind(sweep_kind), *sweep_src.resolve(true), sweep_out, std::cout);
    }
    if (report->parsed()) {
      std::optional<fs::path> tol;
      if (!report_tol.empty()) tol = report_tol;
      return cmd_report(report_dir, tol, std::cout);
    }
    if (table->parsed()) {
      std::optional<fs::path> tol;
      if (!table_tol.empty()) tol = table_tol;
      return cmd_table1(*table_src.resolve(true), table_out, tol, std::cout);
    }
  } catch (const rombox::Error& e) {
    std::cerr << "error [" << rombox::to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
