#include "rombox/integrators.hpp"

#include <cmath>
#include <string>

#include "rombox/detail/block_lu.hpp"
#include "rombox/error.hpp"

namespace rombox {

long IntegratorSpec::step_count() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::invalid_input, "time step must be positive, got " + std::to_string(dt));
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::invalid_input, "end time must be non-negative");
  }
  if (snapshot_stride < 1) throw Error(ErrorCode::invalid_input, "snapshot stride must be >= 1");
  const long steps = std::lround(t_end / dt);
  if (std::abs(steps * dt - t_end) > 1e-12 * t_end) {
    throw Error(ErrorCode::invalid_input, "end time " + std::to_string(t_end) +
                                              " is not a multiple of dt " + std::to_string(dt));
  }
  return steps;
}

LinearMap as_linear_map(const SparseMatrix& op) {
  return [&op](const Vector& in, Vector& out) { out.noalias() = op * in; };
}

namespace {

struct Rk4Workspace {
  explicit Rk4Workspace(Index n) : k1(n), k2(n), k3(n), k4(n), stage(n) {}
  Vector k1, k2, k3, k4, stage;
};

void rk4_advance(const LinearMap& rhs, Vector& state, double dt, Rk4Workspace& w) {
  rhs(state, w.k1);
  w.stage = state + (0.5 * dt) * w.k1;
  rhs(w.stage, w.k2);
  w.stage = state + (0.5 * dt) * w.k2;
  rhs(w.stage, w.k3);
  w.stage = state + dt * w.k3;
  rhs(w.stage, w.k4);
  state += (dt / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
}

template <typename Advance>
Trajectory run_steps(const Vector& state0, const IntegratorSpec& spec, double t0,
                     Advance&& advance) {
  const long steps = spec.step_count();
  Trajectory trajectory;
  trajectory.times.reserve(steps / spec.snapshot_stride + 1);
  trajectory.states.reserve(steps / spec.snapshot_stride + 1);
  trajectory.times.push_back(t0);
  trajectory.states.push_back(state0);
  if (!state0.allFinite()) {
    trajectory.stable = false;
    return trajectory;
  }

  const double initial_max = state0.size() > 0 ? state0.cwiseAbs().maxCoeff() : 0.0;
  Vector state = state0;
  for (long k = 1; k <= steps; ++k) {
    advance(state);
    if (is_unstable(state, initial_max)) {
      trajectory.stable = false;
      return trajectory;
    }
    if (k % spec.snapshot_stride == 0) {
      trajectory.times.push_back(t0 + static_cast<double>(k) * spec.dt);
      trajectory.states.push_back(state);
    }
  }
  return trajectory;
}

}  // namespace

Vector rk4_step(const LinearMap& rhs, const Vector& state, double dt) {
  Rk4Workspace w(state.size());
  Vector next = state;
  rk4_advance(rhs, next, dt, w);
  return next;
}

bool is_unstable(const Vector& state, double initial_max_norm) {
  if (!state.allFinite()) return true;
  if (initial_max_norm <= 0.0 || state.size() == 0) return false;
  return state.cwiseAbs().maxCoeff() > kBlowupFactor * initial_max_norm;
}

Trajectory integrate(const LinearMap& rhs, const Vector& state0, const IntegratorSpec& spec,
                     double t0) {
  if (spec.scheme != Scheme::rk4) {
    throw Error(ErrorCode::invalid_input, "integrate() handles RK4; use integrate_cn for CN");
  }
  Rk4Workspace w(state0.size());
  return run_steps(state0, spec, t0,
                   [&](Vector& state) { rk4_advance(rhs, state, spec.dt, w); });
}

CrankNicolsonStepper::CrankNicolsonStepper(const Matrix& gram, const Matrix& rhs_operator,
                                           double dt)
    : dt_(dt), size_(gram.rows()) {
  if (gram.rows() != gram.cols() || rhs_operator.rows() != gram.rows() ||
      rhs_operator.cols() != gram.cols()) {
    throw Error(ErrorCode::dimension, "Crank-Nicolson operators must be square and equal-sized");
  }
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_input, "time step must be positive");
  explicit_part_ = gram + (0.5 * dt) * rhs_operator;
  const Matrix implicit_part = gram - (0.5 * dt) * rhs_operator;
  implicit_lu_.compute(implicit_part);
  const double rcond = gram.size() > 0 ? implicit_lu_.rcond() : 1.0;
  const auto pivots = implicit_lu_.matrixLU().diagonal().cwiseAbs();
  const bool zero_pivot = gram.size() > 0 && !(pivots.minCoeff() > 1e-14 * pivots.maxCoeff());
  if (zero_pivot || !(rcond > 1e-14) || !implicit_lu_.matrixLU().allFinite()) {
    throw Error(ErrorCode::factorization,
                "S - dt/2 B is singular (reciprocal condition " + std::to_string(rcond) + ")");
  }
}

CrankNicolsonStepper::CrankNicolsonStepper(const SparseMatrix& gram,
                                           const SparseMatrix& rhs_operator, double dt,
                                           Index block_size)
    : dt_(dt), size_(gram.rows()) {
  if (gram.rows() != gram.cols() || rhs_operator.rows() != gram.rows() ||
      rhs_operator.cols() != gram.cols()) {
    throw Error(ErrorCode::dimension, "Crank-Nicolson operators must be square and equal-sized");
  }
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_input, "time step must be positive");
  sparse_explicit_ = gram + (0.5 * dt) * rhs_operator;
  if (block_size > 0) {
    const SparseMatrix left = gram - (0.5 * dt) * rhs_operator;
    if (auto block = detail::BlockSparseLu::factor(left, block_size)) {
      block_lu_ = std::make_shared<const detail::BlockSparseLu>(std::move(*block));
      return;
    }
  }
  const ColSparse implicit_part = gram - (0.5 * dt) * rhs_operator;
  auto lu = std::make_shared<SparseLu>();
  if (size_ > 0) {
    lu->compute(implicit_part);
    bool ok = lu->info() == Eigen::Success;
    if (ok) {
      // Residual probe: a numerically singular matrix shows up as a blown-up
      // or inaccurate solve even when no pivot is exactly zero.
      const Vector probe = Vector::Ones(size_);
      const Vector x = lu->solve(probe);
      ok = x.allFinite() && (implicit_part * x - probe).norm() <= 1e-8 * probe.norm() &&
           x.norm() < 1e14 * probe.norm();
    }
    if (!ok) throw Error(ErrorCode::factorization, "S - dt/2 B is singular");
  }
  sparse_lu_ = std::move(lu);
}

void CrankNicolsonStepper::step(const Vector& state, Vector& next) const {
  if (block_lu_) {
    next.noalias() = sparse_explicit_ * state;
    block_lu_->solve_in_place(next);
    return;
  }
  if (sparse_lu_) {
    const Vector rhs = sparse_explicit_ * state;
    next = sparse_lu_->solve(rhs);
    return;
  }
  next = implicit_lu_.solve(explicit_part_ * state);
}

Vector CrankNicolsonStepper::step(const Vector& state) const {
  Vector next;
  step(state, next);
  return next;
}

CrankNicolsonStepper crank_nicolson_prepare(const Matrix& gram, const Matrix& rhs_operator,
                                            double dt) {
  return CrankNicolsonStepper(gram, rhs_operator, dt);
}

CrankNicolsonStepper crank_nicolson_prepare(const SparseMatrix& gram,
                                            const SparseMatrix& rhs_operator, double dt,
                                            Index block_size) {
  return CrankNicolsonStepper(gram, rhs_operator, dt, block_size);
}

Trajectory integrate_cn(const CrankNicolsonStepper& stepper, const Vector& state0,
                        const IntegratorSpec& spec, double t0) {
  if (state0.size() != stepper.size()) {
    throw Error(ErrorCode::dimension, "initial state does not match the stepper size");
  }
  if (std::abs(spec.dt - stepper.dt()) > 1e-15 * stepper.dt()) {
    throw Error(ErrorCode::invalid_input, "spec dt differs from the prepared stepper dt");
  }
  Vector scratch(state0.size());
  return run_steps(state0, spec, t0, [&](Vector& state) {
    stepper.step(state, scratch);
    state.swap(scratch);
  });
}

}  // namespace rombox
