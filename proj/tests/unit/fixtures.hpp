#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "rombox/error.hpp"
#include "rombox/fom.hpp"
#include "rombox/pod_basis.hpp"

namespace rombox::testing {

inline Matrix random_matrix(Index rows, Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = n01(rng);
  return m;
}

inline Vector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vector v(n);
  for (auto& x : v) x = n01(rng);
  return v;
}

inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::io;
}

// 1D advection reference run, N = 1000, dt = 0.01, t in [0, 5].
inline const SnapshotSet& advection_snapshots() {
  static const SnapshotSet set = [] {
    const Grid1D g = build_grid_1d(1000);
    const FomModel fom = build_fom_1d(g, 1.0);
    const IntegratorSpec spec{Scheme::rk4, 0.01, 5.0, 1};
    const Trajectory t = integrate(as_linear_map(fom.rhs), initial_condition_1d(g).values, spec);
    return make_snapshot_set(t, grid_meta(fom, spec), label_splits(t.times, 1.0, 2.0));
  }();
  return set;
}

inline const FomModel& advection_fom() {
  static const FomModel fom = build_fom_1d(build_grid_1d(1000), 1.0);
  return fom;
}

struct Bases1D {
  PodBasis gpod, lpod, lopod;
};

// r = 60: gpod with 60 modes, I = 10 subdomains with q = 6 for the local variants.
inline const Bases1D& bases_r60() {
  static const Bases1D b = [] {
    const SnapshotSet& set = advection_snapshots();
    const Grid1D g = build_grid_1d(1000);
    const SubdomainLayout non = build_layout(g, 10, LayoutMode::nonoverlap);
    const SubdomainLayout over = build_layout(g, 10, LayoutMode::overlap);
    const KernelSpec k = default_kernel(over);
    return Bases1D{build_gpod(assemble_global(set, {Split::train}), 60),
                   build_lpod(assemble_local(set, non, {Split::train}), non, 6),
                   build_lopod(assemble_local_overlap(set, over, k, {Split::train}), over, k, 6)};
  }();
  return b;
}

}  // namespace rombox::testing
