#include "rombox/harness/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rombox/detail/binary_io.hpp"
#include "rombox/error.hpp"
#include "rombox/harness/csv.hpp"
#include "rombox/harness/svg.hpp"

namespace rombox::harness {
namespace {

double parse_number(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw Error(ErrorCode::format, "expected a number, got '" + text + "'");
  }
  return v;
}

double at_or_nan(const std::vector<double>& values, std::size_t i) {
  return i < values.size() ? values[i] : std::nan("");
}

void ensure_dir(const fs::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

CaseData load_case(const fs::path& snapshots, std::optional<ExperimentConfig> config) {
  SnapshotSet set = load_snapshots(snapshots.string());
  const GridMeta& m = set.meta;
  ExperimentConfig c = config ? *config : preset(m.dims == 1 ? "1d-paper" : "2d-paper");
  c.kind = m.dims == 1 ? CaseKind::adv1d : CaseKind::adv2d;
  c.nx = m.nx;
  c.ny = m.dims == 1 ? 1 : m.ny;
  c.length = m.length_x;
  c.dt = m.dt;
  c.stride = m.stride;
  if (set.count() > 0) c.t_end = set.times.back() - set.times.front();
  if (c.kind == CaseKind::adv1d) c.nu = 0.0;
  CaseData data;
  data.config = c;
  data.fom = build_fom(c);
  if (set.state_size() != data.fom.size()) {
    throw Error(ErrorCode::grid_mismatch, "snapshot state size does not match its grid header");
  }
  data.snapshots = std::move(set);
  return data;
}

void write_metrics(const MetricSeries& metrics, const fs::path& path) {
  std::vector<std::string> header{"time", "sol_err", "rom_err", "proj_err", "energy", "energy_rate"};
  if (metrics.gradient_error) header.push_back("grad_err");
  CsvTable table(header);
  for (std::size_t i = 0; i < metrics.times.size(); ++i) {
    std::vector<CsvCell> row{metrics.times[i], at_or_nan(metrics.solution_error, i),
                             at_or_nan(metrics.rom_error, i),
                             at_or_nan(metrics.projection_error, i), at_or_nan(metrics.energy, i),
                             at_or_nan(metrics.energy_rate, i)};
    if (metrics.gradient_error) row.push_back(at_or_nan(*metrics.gradient_error, i));
    table.add_row(std::move(row));
  }
  table.write(path.string());
}

void write_summary(const MethodRun& run, const fs::path& dir) {
  CsvTable table({"method", "dof", "dof_label", "comp_time_s", "sol_err", "grad_err", "dt",
                  "scheme", "stable"});
  const auto& m = run.metrics;
  const double sol = m.solution_error.empty() ? std::nan("") : m.mean_solution_error();
  const double grad =
      m.gradient_error && !m.gradient_error->empty() ? m.mean_gradient_error() : std::nan("");
  table.add_row({run.method, static_cast<long long>(run.dof), run.dof_label,
                 run.stepping_seconds, sol, grad, run.dt, std::string(scheme_name(run.scheme)),
                 static_cast<long long>(run.stable ? 1 : 0)});
  table.write((dir / ("summary_" + run.method + ".csv")).string());
}

int cmd_fom(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log) {
  ensure_dir(out_dir);
  const CaseData data = prepare_case(config, config.replicas);
  save_snapshots(data.snapshots, (out_dir / "snapshots.rsnp").string());
  CsvTable energy({"time", "energy"});
  const double vol = data.fom.cell_volume();
  for (Index k = 0; k < data.snapshots.count(); ++k) {
    energy.add_row({data.snapshots.times[k], rombox::energy(data.snapshots.data.col(k), vol)});
  }
  energy.write((out_dir / "fom_metrics.csv").string());
  write_summary(fom_row(data), out_dir);
  log << "fom: " << data.snapshots.count() << " snapshots of size " << data.fom.size()
      << ", stepping " << data.fom_seconds << " s\n";
  return 0;
}

int cmd_pod(const PodArgs& args, std::ostream& log) {
  const CaseData data = load_case(args.snapshots, args.config);
  MethodSpec spec;
  spec.variant = parse_variant(args.method);
  if (spec.variant == PodVariant::gpod) {
    if (!args.rank) throw Error(ErrorCode::config, "gpod needs --rank");
    spec.modes = *args.rank;
  } else {
    if (!args.modes) throw Error(ErrorCode::config, args.method + " needs --modes");
    if (args.subdomains.empty() || args.subdomains.size() > 2) {
      throw Error(ErrorCode::config, args.method + " needs --subdomains I or Ix,Iy");
    }
    spec.modes = *args.modes;
    spec.subdomains_x = args.subdomains[0];
    spec.subdomains_y = data.fom.dimension() == 1
                            ? 1
                            : (args.subdomains.size() == 2 ? args.subdomains[1] : args.subdomains[0]);
    if (data.fom.dimension() == 1 && args.subdomains.size() == 2) {
      throw Error(ErrorCode::config, "1D snapshots take a single subdomain count");
    }
  }
  const PodBasis basis = build_basis(data, spec);
  if (!args.out.parent_path().empty()) ensure_dir(args.out.parent_path());
  save_basis(basis, args.out.string());

  CsvTable table({"time", "split", "proj_err"});
  double train_sum = 0.0, val_sum = 0.0;
  int train_n = 0, val_n = 0;
  for (Split split : {Split::train, Split::validation}) {
    if (data.snapshots.columns({split}).empty()) continue;
    const auto report = projection_error(basis, data.snapshots, {split});
    for (std::size_t i = 0; i < report.times.size(); ++i) {
      table.add_row({report.times[i], std::string(to_string(split)), report.errors[i]});
    }
    (split == Split::train ? train_sum : val_sum) += report.mean * report.errors.size();
    (split == Split::train ? train_n : val_n) += static_cast<int>(report.errors.size());
  }
  fs::path csv = args.out;
  csv.replace_filename(args.out.stem().string() + "_projection.csv");
  table.write(csv.string());
  log << "pod: " << args.method << " basis " << dof_label(basis) << ", mean train error "
      << (train_n ? train_sum / train_n : std::nan("")) << ", mean validation error "
      << (val_n ? val_sum / val_n : std::nan("")) << "\n";
  return 0;
}

int cmd_rom(const RomArgs& args, std::ostream& log) {
  CaseData data = load_case(args.snapshots, args.config);
  if (args.t_end) data.config.t_end = *args.t_end;
  auto basis = std::make_shared<const PodBasis>(load_basis(args.basis.string()));
  if (basis->state_size() != data.fom.size()) {
    throw Error(ErrorCode::grid_mismatch,
                "basis has " + std::to_string(basis->state_size()) + " rows but the snapshots have " +
                    std::to_string(data.fom.size()) + " values per state");
  }
  if (basis->layout() && basis->layout()->dims != data.fom.dimension()) {
    throw Error(ErrorCode::grid_mismatch, "basis and snapshots differ in dimension");
  }
  const double dt = args.dt ? *args.dt : data.config.rom_dt.value_or(data.config.dt);
  Scheme scheme;
  if (args.integrator) {
    scheme = *args.integrator;
  } else {
    scheme = (basis->variant() == PodVariant::lopod && data.fom.dimension() == 2)
                 ? Scheme::crank_nicolson
                 : Scheme::rk4;
  }
  ensure_dir(args.out_dir);
  const MethodRun run = run_method(data, basis, dt, scheme, args.replicas);
  write_metrics(run.metrics, args.out_dir / "metrics.csv");
  write_summary(run, args.out_dir);
  std::vector<std::string> header{"time"};
  for (Index k = 0; k < run.model->size(); ++k) header.push_back("a" + std::to_string(k));
  CsvTable trajectory(header);
  for (std::size_t i = 0; i < run.reduced.states.size(); ++i) {
    std::vector<CsvCell> row{run.reduced.times[i]};
    for (Index k = 0; k < run.reduced.states[i].size(); ++k) row.push_back(run.reduced.states[i][k]);
    trajectory.add_row(std::move(row));
  }
  trajectory.write((args.out_dir / "trajectory.csv").string());
  log << "rom: " << run.method << " r=" << run.dof << " dt=" << dt << " " << scheme_name(scheme)
      << (run.stable ? "" : " UNSTABLE") << ", mean solution error "
      << (run.metrics.solution_error.empty() ? std::nan("") : run.metrics.mean_solution_error())
      << ", stepping " << run.stepping_seconds << " s\n";
  return 0;
}

int cmd_coarse(const CoarseArgs& args, std::ostream& log) {
  const CaseData data = load_case(args.snapshots, args.config);
  ensure_dir(args.out_dir);
  const MethodRun run = run_coarse(data, args.factor, args.dt, args.replicas);
  write_metrics(run.metrics, args.out_dir / "metrics_coarse_fom.csv");
  write_summary(run, args.out_dir);
  log << "coarse: factor " << args.factor << " dt=" << args.dt << (run.stable ? "" : " UNSTABLE")
      << ", mean solution error "
      << (run.metrics.solution_error.empty() ? std::nan("") : run.metrics.mean_solution_error())
      << "\n";
  return 0;
}

SweepKind parse_sweep_kind(const std::string& name) {
  if (name == "subdomains") return SweepKind::subdomains;
  if (name == "modes") return SweepKind::modes;
  if (name == "dt") return SweepKind::dt;
  throw Error(ErrorCode::config, "sweep kind must be subdomains, modes or dt, got '" + name + "'");
}

int cmd_sweep(SweepKind kind, const ExperimentConfig& config, const fs::path& out,
              std::ostream& log) {
  const std::vector<int>* range = nullptr;
  if (kind == SweepKind::subdomains) range = &config.sweep_subdomains;
  if (kind == SweepKind::modes) range = &config.sweep_modes;
  if ((range && range->empty()) || (kind == SweepKind::dt && config.sweep_dts.empty())) {
    log << "warning: empty sweep range, nothing to do\n";
    return 0;
  }
  const CaseData data = prepare_case(config);
  if (!out.parent_path().empty()) ensure_dir(out.parent_path());
  const int threads = worker_count();
  int failures = 0;

  if (kind == SweepKind::dt) {
    TimestepSweep sweep;
    if (config.method == "coarse_fom") {
      sweep = coarse_dt_sweep(data, config.coarse_factor, config.sweep_dts, threads);
    } else {
      auto basis = std::make_shared<const PodBasis>(build_basis(data, method_spec(config)));
      Scheme scheme = config.integrator.value_or(
          basis->variant() == PodVariant::lopod && config.dims() == 2 ? Scheme::crank_nicolson
                                                                       : Scheme::rk4);
      sweep = rom_dt_sweep(data, basis, scheme, config.sweep_dts, threads);
    }
    CsvTable table({"dt", "mean_sol_err", "stable", "selected"});
    for (const auto& row : sweep.rows) {
      const bool selected = sweep.selected_dt && *sweep.selected_dt == row.dt;
      table.add_row({row.dt, row.mean_solution_error, static_cast<long long>(row.stable),
                     static_cast<long long>(selected)});
      if (std::isnan(row.mean_solution_error)) ++failures;
    }
    table.write(out.string());
    if (sweep.selected_dt) {
      log << "sweep: selected dt " << *sweep.selected_dt << "\n";
    } else {
      log << "sweep: no stable time step\n";
    }
  } else {
    const PodVariant variant = parse_variant(config.method);
    std::vector<std::pair<int, int>> layouts;
    std::vector<int> modes;
    if (kind == SweepKind::subdomains) {
      for (int i : config.sweep_subdomains) layouts.emplace_back(i, config.dims() == 2 ? i : 1);
      modes = {variant == PodVariant::gpod ? config.rank : config.modes};
    } else {
      layouts.emplace_back(config.subdomains_x, config.subdomains_y);
      modes = config.sweep_modes;
    }
    const auto rows = projection_sweep(data, variant, layouts, modes, threads);
    CsvTable table({"subdomains_x", "subdomains_y", "modes", "split", "mean_proj_err", "failure"});
    for (const auto& row : rows) {
      table.add_row({static_cast<long long>(row.subdomains_x),
                     static_cast<long long>(row.subdomains_y), static_cast<long long>(row.modes),
                     std::string(to_string(row.split)), row.mean_error, row.failure});
      if (!row.failure.empty()) {
        ++failures;
        log << "warning: row I=" << row.subdomains_x << "x" << row.subdomains_y
            << " q=" << row.modes << " failed: " << row.failure << "\n";
      }
    }
    table.write(out.string());
    if (kind == SweepKind::modes) {
      std::vector<int> qs;
      std::vector<double> errs;
      for (const auto& row : rows) {
        if (row.split == Split::validation && row.failure.empty()) {
          qs.push_back(row.modes);
          errs.push_back(row.mean_error);
        }
      }
      if (!qs.empty()) {
        const auto q = select_modes_by_threshold(qs, errs, config.threshold);
        if (q) {
          log << "sweep: selected q " << *q << " at threshold " << config.threshold << "\n";
        } else {
          log << "sweep: no q reaches threshold " << config.threshold << "\n";
        }
      }
    }
  }
  log << "sweep: wrote " << out.string() << (failures ? " with failed rows" : "") << "\n";
  return failures ? 1 : 0;
}

std::map<std::string, Tolerance> default_tolerances() {
  return {
      {"gpod.sol_err", {0.267, 0.5}},     {"lpod.sol_err", {0.0353, 0.3}},
      {"lopod.sol_err", {0.0354, 0.3}},   {"coarse_fom.sol_err", {0.226, 0.3}},
      {"lpod.grad_err", {0.213, 0.3}},    {"lopod.grad_err", {0.164, 0.3}},
      {"grad_order", {1.0, 0.0}},         {"timing_order", {1.0, 0.0}},
  };
}

std::map<std::string, Tolerance> load_tolerances(const fs::path& path) {
  auto out = default_tolerances();
  const auto bytes = detail::read_file(path.string());
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = path.string() + ":" + std::to_string(number);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) throw Error(ErrorCode::config, where + ": expected 'key = target [rel_tol]'");
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    if (!out.count(key)) throw Error(ErrorCode::config, where + ": unknown tolerance key '" + key + "'");
    std::istringstream value_in(line.substr(eq + 1));
    Tolerance t;
    if (!(value_in >> t.target)) throw Error(ErrorCode::config, where + ": missing target");
    if (!(value_in >> t.rel_tol)) t.rel_tol = 0.0;
    out[key] = t;
  }
  return out;
}

int cmd_report(const fs::path& dir, const std::optional<fs::path>& tolerances, std::ostream& log) {
  struct Row {
    std::string method, dof_label;
    double dof = 0, time = 0, sol = 0, grad = 0, dt = 0;
    bool stable = true;
  };
  std::map<std::string, Row> rows;
  std::vector<std::string> missing;
  for (const auto& method : table1_methods()) {
    const fs::path file = dir / ("summary_" + method + ".csv");
    if (!fs::exists(file)) {
      missing.push_back(method);
      continue;
    }
    const CsvData csv = read_csv(file.string());
    if (csv.rows.empty()) throw Error(ErrorCode::format, file.string() + ": no data row");
    const auto& r = csv.rows.front();
    Row row;
    row.method = method;
    row.dof = parse_number(r[csv.column("dof")]);
    row.dof_label = r[csv.column("dof_label")];
    row.time = parse_number(r[csv.column("comp_time_s")]);
    row.sol = parse_number(r[csv.column("sol_err")]);
    row.grad = parse_number(r[csv.column("grad_err")]);
    row.dt = parse_number(r[csv.column("dt")]);
    row.stable = r[csv.column("stable")] == "1";
    rows[method] = row;
  }
  if (!missing.empty()) {
    log << "report: missing runs:";
    for (const auto& m : missing) log << " " << m;
    log << "\n";
    return 2;
  }

  CsvTable table({"method", "dof", "dof_label", "comp_time_s", "sol_err", "grad_err", "dt"});
  for (const auto& method : table1_methods()) {
    const Row& r = rows[method];
    table.add_row({r.method, static_cast<long long>(r.dof), r.dof_label, r.time, r.sol, r.grad,
                   r.dt});
  }
  table.write((dir / "table1.csv").string());

  const auto tol = tolerances ? load_tolerances(*tolerances) : default_tolerances();
  std::ostringstream report;
  int failed = 0;
  auto line = [&](bool ok, const std::string& text) {
    report << (ok ? "PASS " : "FAIL ") << text << "\n";
    if (!ok) ++failed;
  };
  for (const auto& [key, t] : tol) {
    if (key == "timing_order" || key == "grad_order") {
      if (t.target == 0.0) continue;
      bool ok = true;
      std::ostringstream text;
      if (key == "timing_order") {
        text << "timing_order";
        for (std::size_t i = 0; i < table1_methods().size(); ++i) {
          const Row& r = rows[table1_methods()[i]];
          text << (i ? " < " : " ") << r.method << "(" << r.time << " s)";
          if (i && !(rows[table1_methods()[i - 1]].time < r.time)) ok = false;
        }
      } else {
        ok = rows["lopod"].grad < rows["lpod"].grad;
        text << "grad_order lopod(" << rows["lopod"].grad << ") < lpod(" << rows["lpod"].grad << ")";
      }
      line(ok, text.str());
      continue;
    }
    const auto dot = key.find('.');
    const std::string method = key.substr(0, dot);
    const std::string metric = key.substr(dot + 1);
    const Row& r = rows[method];
    const double value = metric == "sol_err" ? r.sol : r.grad;
    const bool ok = std::isfinite(value) && std::abs(value - t.target) <= t.rel_tol * t.target;
    std::ostringstream text;
    text << key << " = " << value << " (target " << t.target << " +- " << 100.0 * t.rel_tol
         << "%)";
    line(ok, text.str());
  }
  report << (failed ? "FAILED " : "ALL PASSED ") << "(" << failed << " failing checks)\n";
  {
    std::ofstream out(dir / "report.txt");
    out << report.str();
    if (!out) throw Error(ErrorCode::io, "cannot write report.txt");
  }
  log << report.str();

  std::vector<ChartSeries> series;
  for (const auto& method : table1_methods()) {
    const fs::path file = dir / ("metrics_" + method + ".csv");
    if (!fs::exists(file)) continue;
    const CsvData csv = read_csv(file.string());
    ChartSeries s{method, {}, {}};
    const auto t = csv.column("time");
    const auto e = csv.column("sol_err");
    for (const auto& row : csv.rows) {
      s.x.push_back(parse_number(row[t]));
      s.y.push_back(parse_number(row[e]));
    }
    series.push_back(std::move(s));
  }
  if (!series.empty()) {
    std::ofstream svg(dir / "errors.svg");
    svg << line_chart("Solution error", "time", "relative error", series, true);
  }
  return failed ? 1 : 0;
}

int cmd_table1(const ExperimentConfig& config, const fs::path& out_dir,
               const std::optional<fs::path>& tolerances, std::ostream& log) {
  ensure_dir(out_dir);
  const CaseData data = prepare_case(config, config.replicas);
  log << "table1: FOM ready, " << data.snapshots.count() << " snapshots, stepping "
      << data.fom_seconds << " s\n";
  Table1Options options;
  options.replicas = config.replicas;
  options.coarse_factor = config.coarse_factor;
  options.threads = worker_count();
  if (!config.sweep_dts.empty()) options.candidate_dts = config.sweep_dts;
  const Table1Result result = table1_runs(data, options);
  for (const auto& [name, sweep] : result.sweeps) {
    CsvTable table({"dt", "mean_sol_err", "stable", "selected"});
    for (const auto& row : sweep.rows) {
      const bool selected = sweep.selected_dt && *sweep.selected_dt == row.dt;
      table.add_row({row.dt, row.mean_solution_error, static_cast<long long>(row.stable),
                     static_cast<long long>(selected)});
    }
    table.write((out_dir / ("dtsweep_" + name + ".csv")).string());
  }
  for (const auto& run : result.runs) {
    write_summary(run, out_dir);
    if (run.method != "fom") write_metrics(run.metrics, out_dir / ("metrics_" + run.method + ".csv"));
    log << "table1: " << run.method << " dof " << run.dof_label << " dt " << run.dt
        << " time " << run.stepping_seconds << " s"
        << (run.stable ? "" : " UNSTABLE") << "\n";
  }
  return cmd_report(out_dir, tolerances, log);
}

}  // namespace rombox::harness
