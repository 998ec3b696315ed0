#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "rombox/fom.hpp"
#include "rombox/integrators.hpp"
#include "rombox/pod_basis.hpp"

namespace rombox {

/// Galerkin reduced model S da/dt = B a with
///   1D: B = -c A,                 A = Gamma^T D Gamma
///   2D: B = -A_conv + nu A_diff,  A_conv = Gamma^T C Gamma, A_diff = Gamma^T L Gamma
struct RomModel {
  std::shared_ptr<const PodBasis> basis;
  SparseMatrix advection;
  std::optional<SparseMatrix> diffusion;
  SparseMatrix rhs;
  double c = 0.0;
  double nu = 0.0;
  int dims = 1;
  double cell_volume = 0.0;

  Index size() const noexcept { return advection.rows(); }
  Matrix dense_rhs() const { return Matrix(rhs); }
};

/// Entries at or below this fraction of max |A| are dropped after assembly.
inline constexpr double kPruneTolerance = 1e-14;

/// Throws ErrorCode::grid_mismatch when the basis and the model disagree on N.
RomModel galerkin_project(std::shared_ptr<const PodBasis> basis, const FomModel& fom);

/// Solves S y = B a (S = I shortcut for orthonormal bases).
Vector rom_rhs(const RomModel& model, const Vector& coefficients);
LinearMap rom_linear_map(const RomModel& model);

/// (cell volume / 2) ||Gamma a||^2.
double reduced_energy(const RomModel& model, const Vector& coefficients);

/// CN for the overlapping basis in 2D, RK4 otherwise.
Scheme default_scheme(const RomModel& model);

/// CN stepper for the model: sparse factorization for local bases, dense for gpod.
CrankNicolsonStepper rom_cn_stepper(const RomModel& model, double dt);

struct RomRun {
  Trajectory reduced;
  Scheme scheme = Scheme::rk4;
  double dt = 0.0;
  /// Seconds spent in the time-stepping loop.
  double stepping_seconds = 0.0;
};

/// a0 = project(u0), then integrates with spec.scheme.
RomRun run_rom(const RomModel& model, const Vector& initial_state, const IntegratorSpec& spec);

/// A prepared stepper can be shared between replicas of the same run.
RomRun run_rom(const RomModel& model, const CrankNicolsonStepper& stepper,
               const Vector& initial_state, const IntegratorSpec& spec);

struct NnzStats {
  Index nnz = 0;              ///< |entry| > 1e-14 max|A|
  Index dense = 0;            ///< r^2
  Index block_size = 0;       ///< q (r for gpod)
  Index nonzero_blocks = 0;   ///< q x q blocks with at least one nonzero
  Index max_blocks_per_row = 0;
};

NnzStats nnz_stats(const RomModel& model);

/// Eigenvalues of S^-1 A sorted by decreasing magnitude. Computed on the
/// similar matrix L^-1 A L^-T (S = L L^T), which stays skew-symmetric.
std::vector<std::complex<double>> rom_spectrum(const RomModel& model);

/// Eigenvalues of the full generator S^-1 B, same ordering.
std::vector<std::complex<double>> rom_generator_spectrum(const RomModel& model);

double spectral_radius(const std::vector<std::complex<double>>& eigenvalues);

}  // namespace rombox
