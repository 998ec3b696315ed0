#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/SparseLU>

#include "rombox/linalg.hpp"

namespace rombox {

namespace detail {
class BlockSparseLu;
}

enum class Scheme { rk4, crank_nicolson };

/// Fixed-step integration request. Snapshots are taken at every
/// `snapshot_stride`-th step (and at t0); recorded times are t0 + k * dt with
/// k the integer step index.
struct IntegratorSpec {
  Scheme scheme = Scheme::rk4;
  double dt = 0.0;
  double t_end = 0.0;
  int snapshot_stride = 1;

  /// round(t_end / dt); throws ErrorCode::invalid_input when dt <= 0,
  /// t_end < 0, stride < 1 or t_end is not an integer multiple of dt
  /// (relative mismatch above 1e-12).
  long step_count() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  bool stable = true;
};

/// out = F(in) for a linear right-hand side. `out` is preallocated by the
/// caller to the right size.
using LinearMap = std::function<void(const Vector& in, Vector& out)>;

LinearMap as_linear_map(const SparseMatrix& op);

/// Classic four-stage Runge-Kutta step, weights (1, 2, 2, 1) / 6.
Vector rk4_step(const LinearMap& rhs, const Vector& state, double dt);

/// A state is unstable when it contains a non-finite entry or its max-norm
/// exceeds `kBlowupFactor` times the initial max-norm.
inline constexpr double kBlowupFactor = 1e6;
bool is_unstable(const Vector& state, double initial_max_norm);

/// RK4 time stepping from `state0` at t0. Stops at the first unstable state,
/// marks the trajectory unstable and returns the snapshots recorded so far
/// (the offending state is not recorded).
Trajectory integrate(const LinearMap& rhs, const Vector& state0,
                     const IntegratorSpec& spec, double t0 = 0.0);

/// Trapezoidal rule for S da/dt = B a:
///   (S - dt/2 B) a+ = (S + dt/2 B) a
/// The left matrix is LU-factorized once at construction. The sparse
/// constructor keeps both sides sparse. With a block size it first tries a
/// block LU (dense b x b blocks, minimum-degree block order, no pivoting) and
/// falls back to a general sparse LU when that is not safe.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const Matrix& gram, const Matrix& rhs_operator, double dt);
  CrankNicolsonStepper(const SparseMatrix& gram, const SparseMatrix& rhs_operator, double dt,
                       Index block_size = 0);

  void step(const Vector& state, Vector& next) const;
  Vector step(const Vector& state) const;

  double dt() const noexcept { return dt_; }
  Index size() const noexcept { return size_; }
  bool is_sparse() const noexcept { return sparse_lu_ != nullptr || block_lu_ != nullptr; }
  bool uses_block_lu() const noexcept { return block_lu_ != nullptr; }

 private:
  using ColSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  using SparseLu = Eigen::SparseLU<ColSparse, Eigen::COLAMDOrdering<int>>;

  double dt_;
  Index size_ = 0;
  Matrix explicit_part_;
  Eigen::PartialPivLU<Matrix> implicit_lu_;
  SparseMatrix sparse_explicit_;
  std::shared_ptr<const SparseLu> sparse_lu_;
  std::shared_ptr<const detail::BlockSparseLu> block_lu_;
};

/// Throws ErrorCode::factorization when S - dt/2 B is (numerically) singular.
CrankNicolsonStepper crank_nicolson_prepare(const Matrix& gram,
                                            const Matrix& rhs_operator, double dt);
CrankNicolsonStepper crank_nicolson_prepare(const SparseMatrix& gram,
                                            const SparseMatrix& rhs_operator, double dt,
                                            Index block_size = 0);

Trajectory integrate_cn(const CrankNicolsonStepper& stepper, const Vector& state0,
                        const IntegratorSpec& spec, double t0 = 0.0);

}  // namespace rombox
