// Acceptance checks. Prints one PASS/FAIL line per criterion plus the measured
// values; exits nonzero when any criterion fails. `--only N[,M]` runs a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rombox/error.hpp"
#include "rombox/fom.hpp"
#include "rombox/harness/config.hpp"
#include "rombox/harness/experiments.hpp"
#include "rombox/kernels.hpp"
#include "rombox/layout.hpp"
#include "rombox/metrics.hpp"
#include "rombox/pod_basis.hpp"
#include "rombox/rom.hpp"
#include "rombox/snapshots.hpp"
#include "rombox/svd.hpp"

using namespace rombox;
using namespace rombox::harness;

namespace {

// Pinned tolerances.
constexpr double kOrthonormalityTol = 1e-12;
constexpr double kDivergenceTol = 1e-12;
constexpr double kPartitionTol = 1e-12;
constexpr double kIdempotenceTol = 1e-11;
constexpr int kRandomVectors = 100;
constexpr double kEnergyRateTol = 1e-11;
constexpr double kDriftRatioLo = 10.0;
constexpr double kDriftRatioHi = 24.0;
constexpr double kTailTol = 1e-10;
constexpr double kIdentityRomTol = 1e-10;
constexpr double kExactProjectionTol = 1e-12;
constexpr double kProjectionGain = 10.0;
constexpr double kSolutionGain = 10.0;
constexpr double kRadiusRatioLo = 3.0;
constexpr double kRadiusRatioHi = 8.0;
constexpr double kDtErrorBand = 0.25;
constexpr double kSelectionThreshold = 1e-2;
constexpr int kLpodModesTarget = 20;
constexpr int kLopodModesTarget = 15;
constexpr int kModesBand = 5;
constexpr double kGpodSlope = 2.0;
constexpr double kGpodSlopeBand = 0.1;
constexpr double kLocalSlopeMax = 2.0;
constexpr double kSlopeRounding = 1e-9;
constexpr double kSparsityGain = 3.0;
constexpr double kFomOrder = 2.0;
constexpr double kFomOrderBand = 0.3;

struct Target {
  const char* key;
  double value;
  double rel_tol;
};
constexpr Target kTable1Targets[] = {
    {"gpod.sol_err", 0.267, 0.5},        {"lpod.sol_err", 0.0353, 0.3},
    {"lopod.sol_err", 0.0354, 0.3},      {"coarse_fom.sol_err", 0.226, 0.3},
    {"lpod.grad_err", 0.213, 0.3},       {"lopod.grad_err", 0.164, 0.3},
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    std::cout << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
    all_ &= ok;
  }
  bool passed() const noexcept { return all_; }

 private:
  bool all_ = true;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vector v(n);
  for (auto& x : v) x = n01(rng);
  return v;
}

Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = n01(rng);
  return m;
}

double max_abs_sum_with_transpose(const SparseMatrix& m) {
  const SparseMatrix sum = m + SparseMatrix(m.transpose());
  double worst = 0.0;
  for (Index k = 0; k < sum.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(sum, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

double orthonormality(const PodBasis& b) {
  return (b.gram() - Matrix::Identity(b.rank(), b.rank())).cwiseAbs().maxCoeff();
}

double idempotence(const PodBasis& b, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int k = 0; k < kRandomVectors; ++k) {
    const Vector v = random_vector(b.state_size(), rng);
    const Vector pv = b.projector_apply(v);
    worst = std::max(worst, (b.projector_apply(pv) - pv).norm() / v.norm());
  }
  return worst;
}

// Shared 1D data: 1d-paper preset (N = 1000, dt = 0.01, t in [0, 5]).
const CaseData& case_1d() {
  static const CaseData data = prepare_case(preset("1d-paper"));
  return data;
}

const CaseData& case_2d() {
  static const CaseData data = [] {
    ExperimentConfig c = preset("2d-paper");
    return prepare_case(c, c.replicas);
  }();
  return data;
}

std::shared_ptr<const PodBasis> basis_1d(PodVariant variant, int r) {
  const MethodSpec spec = variant == PodVariant::gpod ? MethodSpec{variant, 1, 1, r}
                                                      : MethodSpec{variant, 10, 1, r / 10};
  return std::make_shared<const PodBasis>(build_basis(case_1d(), spec));
}

// Small 2D bases from random snapshots on a 64^2 grid.
struct Random2D {
  Grid2D grid;
  PodBasis gpod, lpod, lopod;
};

const Random2D& random_2d() {
  static const Random2D r = [] {
    std::mt19937_64 rng(7);
    const Grid2D g = build_grid_2d(64, 64);
    const Matrix x = random_matrix(g.cell_count(), 30, rng);
    const SubdomainLayout non = build_layout(g, 4, 4, LayoutMode::nonoverlap);
    const SubdomainLayout over = build_layout(g, 4, 4, LayoutMode::overlap);
    const KernelSpec k = default_kernel(over);
    return Random2D{g, build_gpod(x, 20), build_lpod(assemble_local(x, non), non, 10),
                    build_lopod(assemble_local_overlap(x, over, k), over, k, 10)};
  }();
  return r;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

bool structural_invariants() {
  Check c;
  std::mt19937_64 rng(1);
  const SparseMatrix d = build_advection_operator_1d(build_grid_1d(1000));
  c.expect(max_abs_sum_with_transpose(d) == 0.0, "1D D + D^T == 0 (N = 1000)");
  const Grid2D g = build_grid_2d(256, 256);
  const FaceVelocity v = sample_face_velocity(g, default_velocity());
  const SparseMatrix conv = build_convection_operator_2d(g, v);
  c.expect(max_abs_sum_with_transpose(conv) == 0.0, "2D C + C^T == 0 (256^2)");
  const double div = discrete_divergence(g, v).cwiseAbs().maxCoeff();
  c.expect(div <= kDivergenceTol, "max |div V| = " + fmt(div));

  const auto gpod = basis_1d(PodVariant::gpod, 60);
  const auto lpod = basis_1d(PodVariant::lpod, 60);
  const auto lopod = basis_1d(PodVariant::lopod, 60);
  const Random2D& r2 = random_2d();
  for (const PodBasis* b : {gpod.get(), lpod.get(), &r2.gpod, &r2.lpod}) {
    const double dev = orthonormality(*b);
    c.expect(dev <= kOrthonormalityTol, std::string(to_string(b->variant())) + " " +
                                            (b->state_size() == 1000 ? "1D" : "2D") +
                                            " max |Phi^T Phi - I| = " + fmt(dev));
  }

  const SubdomainLayout l1 = build_layout(build_grid_1d(1000), 10, LayoutMode::overlap);
  const SubdomainLayout l2 = build_layout(g, 8, 8, LayoutMode::overlap);
  for (const SubdomainLayout* l : {&l1, &l2}) {
    const KernelSpec k = default_kernel(*l);
    const double dev = std::max(partition_of_unity_deviation(*l, k),
                                verify_partition_of_unity(*l, k, 10000));
    c.expect(dev <= kPartitionTol,
             std::string(l->dims == 1 ? "sin2 (I = 10)" : "bump (8 x 8)") +
                 " partition of unity deviation = " + fmt(dev));
  }

  for (const PodBasis* b : {gpod.get(), lpod.get(), lopod.get(), &r2.gpod, &r2.lpod, &r2.lopod}) {
    const double dev = idempotence(*b, rng);
    c.expect(dev <= kIdempotenceTol, std::string(to_string(b->variant())) + " " +
                                         (b->state_size() == 1000 ? "1D" : "2D") +
                                         " max ||P P v - P v|| / ||v|| = " + fmt(dev));
  }
  return c.passed();
}

bool energy_conservation() {
  Check c;
  std::mt19937_64 rng(2);
  const Random2D& r2 = random_2d();
  const FomModel fom2 = build_fom_2d(r2.grid, default_velocity(), 0.0);
  std::vector<std::pair<std::string, RomModel>> models;
  for (PodVariant v : {PodVariant::gpod, PodVariant::lpod, PodVariant::lopod}) {
    models.emplace_back(std::string("1D ") + to_string(v), galerkin_project(basis_1d(v, 60), case_1d().fom));
  }
  for (const PodBasis* b : {&r2.gpod, &r2.lpod, &r2.lopod}) {
    models.emplace_back(std::string("2D ") + to_string(b->variant()),
                        galerkin_project(std::make_shared<const PodBasis>(*b), fom2));
  }
  for (const auto& [name, model] : models) {
    double worst = 0.0;
    for (int k = 0; k < kRandomVectors; ++k) {
      worst = std::max(worst, energy_rate(model, random_vector(model.size(), rng)).relative);
    }
    c.expect(worst <= kEnergyRateTol, name + " max relative energy rate = " + fmt(worst));
  }

  const Vector u0 = case_1d().snapshots.data.col(0);
  for (std::size_t m = 0; m < 3; ++m) {
    const RomModel& model = models[m].second;
    double drift[2];
    for (int k = 0; k < 2; ++k) {
      const double dt = k == 0 ? 0.01 : 0.005;
      const RomRun run = run_rom(model, u0, IntegratorSpec{Scheme::rk4, dt, 5.0, 1});
      drift[k] = std::abs(energy_diagnostics(run.reduced, model).drift.back());
    }
    const double ratio = drift[0] / drift[1];
    c.expect(ratio >= kDriftRatioLo && ratio <= kDriftRatioHi,
             models[m].first + " |drift(5)| dt 0.01: " + fmt(drift[0]) + ", dt 0.005: " +
                 fmt(drift[1]) + ", ratio " + fmt(ratio) + " (window [10, 24])");
  }
  return c.passed();
}

bool svd_oracles() {
  Check c;
  const SnapshotSet& set = case_1d().snapshots;
  const Matrix x = assemble_global(set, {Split::train});
  const SvdResult svd = thin_svd(x);
  const double total = svd.singular_values.squaredNorm();
  // Ranks whose tail stays well above the rounding floor of the SVD; at
  // r = 30 the tail is ~5e-11 of the total and no longer resolvable to 1e-10.
  for (Index r : {5, 10, 15, 20}) {
    const PodBasis b = build_gpod(svd, r);
    double residual = 0.0;
    for (Index j = 0; j < x.cols(); ++j) residual += (b.projector_apply(x.col(j)) - x.col(j)).squaredNorm();
    const double direct = std::sqrt(residual / x.squaredNorm());
    const Index tail_count = svd.singular_values.size() - r;
    const double tail = std::sqrt(svd.singular_values.tail(tail_count).squaredNorm() / total);
    const double rel = std::abs(direct - tail) / tail;
    c.expect(rel <= kTailTol, "gpod r = " + std::to_string(r) + " projection error " + fmt(direct) +
                                  " vs tail " + fmt(tail) + ", relative gap " + fmt(rel));
  }

  const FomModel& fom = case_1d().fom;
  const Vector u0 = set.data.col(0);
  const IntegratorSpec spec{Scheme::rk4, 0.01, 1.0, 100};
  const Trajectory full = integrate(as_linear_map(fom.rhs), u0, spec);
  const RomModel identity =
      galerkin_project(std::make_shared<const PodBasis>(identity_basis(fom.size())), fom);
  const RomRun rom = run_rom(identity, u0, spec);
  const double gap = relative_error(identity.basis->reconstruct(rom.reduced.states.back()),
                                    full.states.back());
  c.expect(gap <= kIdentityRomTol, "identity-basis ROM vs FOM at t = 1: " + fmt(gap));

  const SubdomainLayout non = build_layout(build_grid_1d(1000), 10, LayoutMode::nonoverlap);
  const PodBasis full_local = build_lpod(assemble_local(set, non, {Split::train}), non, 100);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int k = 0; k < kRandomVectors; ++k) {
    const Vector v = random_vector(1000, rng);
    worst = std::max(worst, (full_local.projector_apply(v) - v).norm() / v.norm());
  }
  for (Index j = 0; j < set.count(); ++j) {
    worst = std::max(worst, relative_error(full_local.projector_apply(set.data.col(j)), set.data.col(j)));
  }
  c.expect(worst <= kExactProjectionTol, "lpod q = J = 100 max ||P u - u|| / ||u|| = " + fmt(worst));
  return c.passed();
}

bool headline_1d() {
  Check c;
  const CaseData& data = case_1d();
  const auto gpod = basis_1d(PodVariant::gpod, 60);
  const auto lpod = basis_1d(PodVariant::lpod, 60);
  const auto lopod = basis_1d(PodVariant::lopod, 60);

  const double pg = projection_error(*gpod, data.snapshots, {Split::validation}).mean;
  const double po = projection_error(*lopod, data.snapshots, {Split::validation}).mean;
  c.expect(pg >= kProjectionGain * po, "(a) validation projection error gpod " + fmt(pg) +
                                           ", lopod " + fmt(po) + ", ratio " + fmt(pg / po));

  double window[3];
  const std::shared_ptr<const PodBasis> bases[3] = {gpod, lpod, lopod};
  for (int k = 0; k < 3; ++k) {
    const MethodRun run = run_method(data, bases[k], 0.01, Scheme::rk4);
    window[k] = mean_in_window(run.metrics.times, run.metrics.solution_error, 2.0, 5.0);
  }
  c.expect(window[2] < window[1] && window[1] < window[0] && kSolutionGain * window[2] <= window[0],
           "(b) mean solution error on (2, 5] gpod " + fmt(window[0]) + ", lpod " + fmt(window[1]) +
               ", lopod " + fmt(window[2]));

  const double rg = spectral_radius(rom_spectrum(galerkin_project(gpod, data.fom)));
  const double rl = spectral_radius(rom_spectrum(galerkin_project(lpod, data.fom)));
  c.expect(rg / rl >= kRadiusRatioLo && rg / rl <= kRadiusRatioHi,
           "(c) spectral radius gpod " + fmt(rg) + ", lpod " + fmt(rl) + ", ratio " + fmt(rg / rl));

  const MethodRun g05 = run_method(data, gpod, 0.05, Scheme::rk4);
  const MethodRun l01 = run_method(data, lpod, 0.01, Scheme::rk4);
  const MethodRun l05 = run_method(data, lpod, 0.05, Scheme::rk4);
  const double e01 = l01.metrics.mean_solution_error();
  const double e05 = l05.metrics.mean_solution_error();
  c.expect(!g05.stable && l05.stable && std::abs(e05 / e01 - 1.0) <= kDtErrorBand,
           std::string("(d) gpod dt 0.05 ") + (g05.stable ? "stable" : "unstable") + ", lpod dt 0.05 " +
               (l05.stable ? "stable" : "unstable") + " error " + fmt(e05) + " vs dt 0.01 " + fmt(e01));
  return c.passed();
}

bool table1() {
  Check c;
  const CaseData& data = case_2d();
  Table1Options options;
  options.threads = worker_count();
  const Table1Result result = table1_runs(data, options);
  auto find = [&](const std::string& name) -> const MethodRun& {
    for (const auto& r : result.runs) {
      if (r.method == name) return r;
    }
    throw Error(ErrorCode::invalid_input, "missing run " + name);
  };
  for (const auto& r : result.runs) {
    std::cout << "    " << r.method << ": dof " << r.dof_label << ", dt " << fmt(r.dt) << ", time "
              << fmt(r.stepping_seconds) << " s\n";
  }
  for (const Target& t : kTable1Targets) {
    const std::string key = t.key;
    const auto dot = key.find('.');
    const MethodRun& run = find(key.substr(0, dot));
    const double value = key.substr(dot + 1) == "sol_err" ? run.metrics.mean_solution_error()
                                                          : run.metrics.mean_gradient_error();
    c.expect(run.stable && std::abs(value / t.value - 1.0) <= t.rel_tol,
             key + " = " + fmt(value) + " (target " + fmt(t.value) + " +- " +
                 fmt(100 * t.rel_tol) + "%)");
  }
  const double gl = find("lpod").metrics.mean_gradient_error();
  const double go = find("lopod").metrics.mean_gradient_error();
  c.expect(go < gl, "gradient error lopod " + fmt(go) + " < lpod " + fmt(gl));
  const char* order[] = {"gpod", "lpod", "lopod", "coarse_fom", "fom"};
  bool ordered = true;
  std::string times;
  for (int k = 0; k < 5; ++k) {
    const double t = find(order[k]).stepping_seconds;
    if (k > 0 && !(find(order[k - 1]).stepping_seconds < t)) ordered = false;
    times += std::string(k ? " < " : "") + order[k] + " " + fmt(t);
  }
  c.expect(ordered, "time ordering " + times);
  return c.passed();
}

bool mode_selection() {
  Check c;
  const CaseData& data = case_2d();
  std::vector<int> modes;
  for (int q = 1; q <= 40; ++q) modes.push_back(q);
  const std::vector<double> thresholds{5e-2, 2e-2, 1e-2, 5e-3, 2e-3, 1e-3};
  for (auto [variant, target] : {std::pair{PodVariant::lpod, kLpodModesTarget},
                                 std::pair{PodVariant::lopod, kLopodModesTarget}}) {
    const auto rows = projection_sweep(data, variant, {{8, 8}}, modes, worker_count());
    std::vector<double> errors;
    for (const auto& row : rows) {
      if (row.split == Split::validation) errors.push_back(row.failure.empty() ? row.mean_error : NAN);
    }
    const auto q = select_modes_by_threshold(modes, errors, kSelectionThreshold);
    c.expect(q && std::abs(*q - target) <= kModesBand,
             std::string(to_string(variant)) + " q* at 1e-2 = " + (q ? std::to_string(*q) : "none") +
                 " (target " + std::to_string(target) + " +- " + std::to_string(kModesBand) + ")");
    bool monotone = true;
    int previous = 0;
    bool exhausted = false;
    std::string trail;
    for (double t : thresholds) {
      const auto s = select_modes_by_threshold(modes, errors, t);
      if (s) {
        if (exhausted || *s < previous) monotone = false;
        previous = *s;
      } else {
        exhausted = true;
      }
      trail += " " + fmt(t) + ":" + (s ? std::to_string(*s) : "none");
    }
    c.expect(monotone, std::string(to_string(variant)) + " selection vs threshold" + trail);
  }
  return c.passed();
}

bool sparsity_scaling() {
  Check c;
  const CaseData& data = case_1d();
  const std::vector<int> ranks{20, 40, 60, 80, 100};
  std::vector<double> rs, nnz[3];
  bool bounds = true;
  std::string bound_trail;
  for (int r : ranks) {
    rs.push_back(r);
    for (int v = 0; v < 3; ++v) {
      const auto variant = static_cast<PodVariant>(v);
      const NnzStats s = nnz_stats(galerkin_project(basis_1d(variant, r), data.fom));
      nnz[v].push_back(double(s.nnz));
      const Index q = r / 10;
      if (variant == PodVariant::lpod && s.nnz > 3 * q * q * 10) bounds = false;
      if (variant == PodVariant::lopod && s.nnz > 5 * q * q * 10) bounds = false;
      if (variant != PodVariant::gpod) {
        bound_trail += " " + std::string(to_string(variant)) + "(" + std::to_string(r) + ")=" +
                       std::to_string(s.nnz);
      }
    }
  }
  c.expect(bounds, "block bounds 3 q^2 I (lpod), 5 q^2 I (lopod):" + bound_trail);
  const double sg = slope(rs, nnz[0]);
  c.expect(std::abs(sg - kGpodSlope) <= kGpodSlopeBand, "gpod nnz slope " + fmt(sg));
  for (int v = 1; v < 3; ++v) {
    const double sl = slope(rs, nnz[v]);
    const double gain = nnz[0].back() / nnz[v].back();
    c.expect(sl <= kLocalSlopeMax + kSlopeRounding && gain >= kSparsityGain,
             std::string(to_string(static_cast<PodVariant>(v))) + " nnz slope " + fmt(sl) +
                 ", nnz at r = 100 " + fmt(nnz[v].back()) + " vs gpod " + fmt(nnz[0].back()) +
                 " (" + fmt(gain) + "x smaller)");
  }
  return c.passed();
}

// Error at t = 1 (the training horizon). At t = 5 the N = 250 run has an
// O(1) phase error and is out of the asymptotic range; it is printed only.
bool fom_order() {
  Check c;
  std::vector<double> ns, errors;
  for (int n : {250, 500, 1000}) {
    const Grid1D g = build_grid_1d(n);
    const FomModel fom = build_fom_1d(g, 1.0);
    const IntegratorSpec spec{Scheme::rk4, 0.002, 5.0, 500};
    const Trajectory t = integrate(as_linear_map(fom.rhs), initial_condition_1d(g).values, spec);
    const double e1 = relative_error(t.states[1], exact_solution_1d(g, 1.0, 1.0).values);
    const double e5 = relative_error(t.states.back(), exact_solution_1d(g, 5.0, 1.0).values);
    ns.push_back(n);
    errors.push_back(e1);
    std::cout << "    N = " << n << ": error at t = 1 " << fmt(e1) << ", at t = 5 " << fmt(e5) << "\n";
  }
  const double order = -slope(ns, errors);
  const double o1 = std::log2(errors[0] / errors[1]);
  const double o2 = std::log2(errors[1] / errors[2]);
  const bool ok = [&] {
    for (double o : {order, o1, o2}) {
      if (std::abs(o - kFomOrder) > kFomOrderBand) return false;
    }
    return true;
  }();
  c.expect(ok, "observed order at t = 1: fit " + fmt(order) + ", pairwise " + fmt(o1) + ", " + fmt(o2));
  return c.passed();
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      for (int id : parse_int_list(argv[++i])) only.insert(id);
    } else {
      std::cerr << "usage: rombox_acceptance [--only N[,M...]]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria{
      {1, "structural invariants", structural_invariants},
      {2, "energy conservation", energy_conservation},
      {3, "svd and projection oracles", svd_oracles},
      {4, "1D headline reproduction", headline_1d},
      {5, "2D method comparison table", table1},
      {6, "mode selection by threshold", mode_selection},
      {7, "sparsity scaling", sparsity_scaling},
      {8, "FOM convergence order", fom_order},
  };
  int failures = 0;
  std::vector<std::string> lines;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    std::cout << "criterion " << c.id << ": " << c.name << "\n";
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::cout << "    error: " << e.what() << "\n";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " " << c.name << " ("
         << fmt(seconds) << " s)";
    std::cout << line.str() << "\n" << std::flush;
    lines.push_back(line.str());
    failures += ok ? 0 : 1;
  }
  std::cout << "\nsummary\n";
  for (const auto& l : lines) std::cout << l << "\n";
  return failures == 0 ? 0 : 1;
}
