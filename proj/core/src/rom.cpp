#include "rombox/rom.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <string>

#include "rombox/error.hpp"

namespace rombox {
namespace {

using ColSparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;

SparseMatrix prune_relative(const Matrix& dense) {
  const double cutoff = kPruneTolerance * dense.cwiseAbs().maxCoeff();
  std::vector<Triplet> triplets;
  for (Index j = 0; j < dense.cols(); ++j) {
    for (Index i = 0; i < dense.rows(); ++i) {
      if (std::abs(dense(i, j)) > cutoff) triplets.emplace_back(i, j, dense(i, j));
    }
  }
  SparseMatrix out(dense.rows(), dense.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseMatrix prune_relative(const SparseMatrix& sparse) {
  double max_abs = 0.0;
  for (Index k = 0; k < sparse.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(sparse, k); it; ++it) {
      max_abs = std::max(max_abs, std::abs(it.value()));
    }
  }
  const double cutoff = kPruneTolerance * max_abs;
  SparseMatrix out = sparse;
  out.prune([cutoff](Index, Index, double v) { return std::abs(v) > cutoff; });
  out.makeCompressed();
  return out;
}

SparseMatrix reduce_operator(const PodBasis& basis, const ColSparse& gamma,
                             const SparseMatrix& op) {
  if (!basis.is_local()) {
    const Matrix phi_op = op * basis.block();
    return prune_relative(Matrix(basis.block().transpose() * phi_op));
  }
  const ColSparse op_gamma = ColSparse(op) * gamma;
  const SparseMatrix reduced = ColSparse(gamma.transpose() * op_gamma);
  return prune_relative(reduced);
}

// L^-1 M L^-T for S = L L^T; M itself for orthonormal bases.
Matrix symmetric_similar(const RomModel& model, const Matrix& m) {
  const PodBasis& basis = *model.basis;
  if (basis.orthonormal()) return m;
  Eigen::LLT<Matrix> llt(basis.gram());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::factorization, "Gram matrix is not positive definite");
  }
  const auto l = llt.matrixL();
  Matrix left = l.solve(m);
  Matrix both = l.solve(left.transpose()).transpose();
  return both;
}

std::vector<std::complex<double>> sorted_eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::factorization, "eigenvalue iteration did not converge");
  }
  std::vector<std::complex<double>> values(solver.eigenvalues().begin(),
                                           solver.eigenvalues().end());
  std::stable_sort(values.begin(), values.end(),
                   [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
  return values;
}

}  // namespace

RomModel galerkin_project(std::shared_ptr<const PodBasis> basis, const FomModel& fom) {
  if (!basis) throw Error(ErrorCode::invalid_input, "null basis");
  if (basis->state_size() != fom.size()) {
    throw Error(ErrorCode::grid_mismatch, "basis has N = " + std::to_string(basis->state_size()) +
                                              " but the model has N = " +
                                              std::to_string(fom.size()));
  }
  RomModel model;
  model.dims = fom.dimension();
  model.c = fom.c;
  model.nu = fom.nu;
  model.cell_volume = fom.cell_volume();
  ColSparse gamma;
  if (basis->is_local()) gamma = basis->assembled();
  model.advection = reduce_operator(*basis, gamma, fom.advection);
  if (model.dims == 1) {
    model.rhs = (-fom.c) * model.advection;
  } else {
    model.diffusion = reduce_operator(*basis, gamma, *fom.diffusion);
    model.rhs = prune_relative(SparseMatrix(fom.nu * *model.diffusion - model.advection));
  }
  model.basis = std::move(basis);
  return model;
}

Vector rom_rhs(const RomModel& model, const Vector& coefficients) {
  if (coefficients.size() != model.size()) {
    throw Error(ErrorCode::dimension, "coefficient vector does not match the reduced model");
  }
  return model.basis->solve_gram(Vector(model.rhs * coefficients));
}

LinearMap rom_linear_map(const RomModel& model) {
  if (model.basis->orthonormal()) {
    return [&model](const Vector& in, Vector& out) { out.noalias() = model.rhs * in; };
  }
  return [&model](const Vector& in, Vector& out) {
    out.noalias() = model.rhs * in;
    out = model.basis->solve_gram(out);
  };
}

double reduced_energy(const RomModel& model, const Vector& coefficients) {
  const Vector s_a = model.basis->gram() * coefficients;
  return 0.5 * model.cell_volume * coefficients.dot(s_a);
}

Scheme default_scheme(const RomModel& model) {
  if (model.dims == 2 && model.basis->variant() == PodVariant::lopod) return Scheme::crank_nicolson;
  return Scheme::rk4;
}

CrankNicolsonStepper rom_cn_stepper(const RomModel& model, double dt) {
  const PodBasis& basis = *model.basis;
  if (!basis.is_local()) return crank_nicolson_prepare(basis.gram(), model.dense_rhs(), dt);
  const Matrix& gram = basis.gram();
  const double cutoff = gram.size() > 0 ? kPruneTolerance * gram.cwiseAbs().maxCoeff() : 0.0;
  const SparseMatrix sparse_gram = gram.sparseView(1.0, cutoff);
  return crank_nicolson_prepare(sparse_gram, model.rhs, dt, basis.modes_per_subdomain());
}

RomRun run_rom(const RomModel& model, const Vector& initial_state, const IntegratorSpec& spec) {
  if (spec.scheme == Scheme::crank_nicolson) {
    const auto stepper = rom_cn_stepper(model, spec.dt);
    return run_rom(model, stepper, initial_state, spec);
  }
  const Vector a0 = model.basis->project(initial_state);
  const LinearMap map = rom_linear_map(model);
  RomRun run;
  run.scheme = spec.scheme;
  run.dt = spec.dt;
  const auto start = std::chrono::steady_clock::now();
  run.reduced = integrate(map, a0, spec);
  run.stepping_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

RomRun run_rom(const RomModel& model, const CrankNicolsonStepper& stepper,
               const Vector& initial_state, const IntegratorSpec& spec) {
  if (spec.scheme != Scheme::crank_nicolson) {
    throw Error(ErrorCode::invalid_input, "a prepared stepper needs the crank_nicolson scheme");
  }
  if (stepper.size() != model.size()) {
    throw Error(ErrorCode::dimension, "stepper size does not match the reduced model");
  }
  const Vector a0 = model.basis->project(initial_state);
  RomRun run;
  run.scheme = spec.scheme;
  run.dt = spec.dt;
  const auto start = std::chrono::steady_clock::now();
  run.reduced = integrate_cn(stepper, a0, spec);
  run.stepping_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

NnzStats nnz_stats(const RomModel& model) {
  const SparseMatrix& a = model.advection;
  NnzStats stats;
  stats.dense = a.rows() * a.cols();
  stats.block_size = model.basis->modes_per_subdomain();
  double max_abs = 0.0;
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) max_abs = std::max(max_abs, std::abs(it.value()));
  }
  const double cutoff = kPruneTolerance * max_abs;
  const Index q = stats.block_size;
  const Index blocks = a.rows() / q;
  std::vector<std::vector<char>> seen(blocks, std::vector<char>(blocks, 0));
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      if (std::abs(it.value()) <= cutoff) continue;
      ++stats.nnz;
      seen[it.row() / q][it.col() / q] = 1;
    }
  }
  for (const auto& row : seen) {
    const auto count = static_cast<Index>(std::count(row.begin(), row.end(), 1));
    stats.nonzero_blocks += count;
    stats.max_blocks_per_row = std::max(stats.max_blocks_per_row, count);
  }
  return stats;
}

std::vector<std::complex<double>> rom_spectrum(const RomModel& model) {
  return sorted_eigenvalues(symmetric_similar(model, Matrix(model.advection)));
}

std::vector<std::complex<double>> rom_generator_spectrum(const RomModel& model) {
  return sorted_eigenvalues(symmetric_similar(model, model.dense_rhs()));
}

double spectral_radius(const std::vector<std::complex<double>>& eigenvalues) {
  double radius = 0.0;
  for (const auto& v : eigenvalues) radius = std::max(radius, std::abs(v));
  return radius;
}

}  // namespace rombox
