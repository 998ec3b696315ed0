#include <benchmark/benchmark.h>

#include <memory>

#include "rombox/fom.hpp"
#include "rombox/integrators.hpp"
#include "rombox/pod_basis.hpp"
#include "rombox/rom.hpp"
#include "rombox/snapshots.hpp"
#include "rombox/svd.hpp"

namespace {

using namespace rombox;

const FomModel& fom_1d() {
  static const FomModel model = build_fom_1d(build_grid_1d(1000), 1.0);
  return model;
}

const FomModel& fom_2d() {
  static const FomModel model = build_fom_2d(build_grid_2d(256, 256), default_velocity(), 1e-3);
  return model;
}

const SnapshotSet& snapshots_1d() {
  static const SnapshotSet set = [] {
    const IntegratorSpec spec{Scheme::rk4, 0.01, 1.0, 1};
    const Trajectory t =
        integrate(as_linear_map(fom_1d().rhs), initial_condition_1d(fom_1d().grid_1d()).values, spec);
    return make_snapshot_set(t, grid_meta(fom_1d(), spec), label_splits(t.times, 1.0, 2.0));
  }();
  return set;
}

void BM_FomRhs1D(benchmark::State& state) {
  const auto map = as_linear_map(fom_1d().rhs);
  const Vector u = initial_condition_1d(fom_1d().grid_1d()).values;
  Vector out(u.size());
  for (auto _ : state) {
    map(u, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FomRhs1D);

void BM_FomRhs2D(benchmark::State& state) {
  const auto map = as_linear_map(fom_2d().rhs);
  const Vector u = initial_condition_2d(fom_2d().grid_2d()).values;
  Vector out(u.size());
  for (auto _ : state) {
    map(u, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FomRhs2D);

void BM_Svd1D(benchmark::State& state) {
  const Matrix x = assemble_global(snapshots_1d(), {Split::train});
  for (auto _ : state) {
    SvdResult svd = truncated_svd(x, state.range(0));
    benchmark::DoNotOptimize(svd.left.data());
  }
}
BENCHMARK(BM_Svd1D)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

std::shared_ptr<const PodBasis> basis_1d(PodVariant variant) {
  const Grid1D& grid = fom_1d().grid_1d();
  if (variant == PodVariant::gpod) {
    return std::make_shared<const PodBasis>(
        build_gpod(assemble_global(snapshots_1d(), {Split::train}), 60));
  }
  if (variant == PodVariant::lpod) {
    const auto layout = build_layout(grid, 10, LayoutMode::nonoverlap);
    return std::make_shared<const PodBasis>(
        build_lpod(assemble_local(snapshots_1d(), layout, {Split::train}), layout, 6));
  }
  const auto layout = build_layout(grid, 10, LayoutMode::overlap);
  const KernelSpec kernel = default_kernel(layout);
  return std::make_shared<const PodBasis>(build_lopod(
      assemble_local_overlap(snapshots_1d(), layout, kernel, {Split::train}), layout, kernel, 6));
}

void BM_RomRhs1D(benchmark::State& state) {
  const auto variant = static_cast<PodVariant>(state.range(0));
  const RomModel model = galerkin_project(basis_1d(variant), fom_1d());
  const Vector a = model.basis->project(initial_condition_1d(fom_1d().grid_1d()).values);
  for (auto _ : state) {
    Vector y = rom_rhs(model, a);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetLabel(to_string(variant));
}
BENCHMARK(BM_RomRhs1D)->Arg(0)->Arg(1)->Arg(2);

void BM_GalerkinProject1D(benchmark::State& state) {
  const auto basis = basis_1d(static_cast<PodVariant>(state.range(0)));
  for (auto _ : state) {
    RomModel model = galerkin_project(basis, fom_1d());
    benchmark::DoNotOptimize(model.rhs.nonZeros());
  }
  state.SetLabel(to_string(basis->variant()));
}
BENCHMARK(BM_GalerkinProject1D)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CrankNicolsonStep(benchmark::State& state) {
  const RomModel model = galerkin_project(basis_1d(PodVariant::lopod), fom_1d());
  const auto stepper = crank_nicolson_prepare(model.basis->gram(), model.dense_rhs(), 0.01);
  Vector a = model.basis->project(initial_condition_1d(fom_1d().grid_1d()).values);
  Vector next(a.size());
  for (auto _ : state) {
    stepper.step(a, next);
    a.swap(next);
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_CrankNicolsonStep);

}  // namespace

BENCHMARK_MAIN();
