#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rombox/kernels.hpp"
#include "rombox/layout.hpp"
#include "rombox/linalg.hpp"
#include "rombox/snapshots.hpp"
#include "rombox/svd.hpp"

namespace rombox {

enum class PodVariant : std::uint8_t { gpod = 0, lpod = 1, lopod = 2 };

const char* to_string(PodVariant variant) noexcept;
PodVariant parse_variant(const std::string& name);

/// Reduced basis u ~ Gamma a.
///
/// gpod stores the dense N x r matrix Phi. The local variants store one J x q
/// block that is copied onto every subdomain; the assembled Gamma is
/// block-diagonal (lpod) or has overlapping blocks (lopod). Coefficient
/// vectors are subdomain-major: a[s * q + m] is mode m on subdomain s.
///
/// The Gram matrix S = Gamma^T Gamma is the identity for gpod and lpod and is
/// Cholesky-factorized once for lopod; every projection reuses the factor.
class PodBasis {
 public:
  static PodBasis global(Matrix phi, Vector singular_values);
  static PodBasis local(PodVariant variant, Matrix block, Vector singular_values,
                        SubdomainLayout layout, std::optional<KernelSpec> kernel);

  PodVariant variant() const noexcept { return variant_; }
  bool is_local() const noexcept { return variant_ != PodVariant::gpod; }
  bool orthonormal() const noexcept { return variant_ != PodVariant::lopod; }

  Index state_size() const noexcept { return state_size_; }
  Index rank() const noexcept { return rank_; }
  /// q for local variants, r for gpod.
  Index modes_per_subdomain() const noexcept { return block_.cols(); }

  /// Gamma-hat (J x q) or Phi (N x r).
  const Matrix& block() const noexcept { return block_; }
  const Vector& singular_values() const noexcept { return singular_values_; }
  const SubdomainLayout* layout() const noexcept { return layout_.get(); }
  const std::optional<KernelSpec>& kernel() const noexcept { return kernel_; }

  /// Assembled N x r sparse operator (for gpod a sparse copy of Phi).
  SparseMatrix assembled() const;

  /// Computed Gamma^T Gamma, r x r.
  const Matrix& gram() const noexcept { return gram_; }

  Vector apply(const Vector& coefficients) const;    ///< Gamma a
  Vector apply_transpose(const Vector& state) const; ///< Gamma^T u
  Vector solve_gram(const Vector& rhs) const;        ///< S^-1 rhs
  Matrix solve_gram(const Matrix& rhs) const;

  Vector project(const Vector& state) const;              ///< S^-1 Gamma^T u
  Vector reconstruct(const Vector& coefficients) const;   ///< Gamma a
  Vector projector_apply(const Vector& state) const;      ///< P u

 private:
  PodBasis() = default;
  void finish();

  PodVariant variant_ = PodVariant::gpod;
  Index state_size_ = 0;
  Index rank_ = 0;
  Matrix block_;
  Vector singular_values_;
  std::shared_ptr<const SubdomainLayout> layout_;
  std::optional<KernelSpec> kernel_;
  SparseMatrix assembled_;
  Matrix gram_;
  std::shared_ptr<const Eigen::LLT<Matrix>> gram_factor_;
};

/// Phi = first r left singular vectors of the training matrix. Throws
/// ErrorCode::dimension when r exceeds min(N, s).
PodBasis build_gpod(const Matrix& training, Index r);
PodBasis build_gpod(const SvdResult& svd, Index r);

/// Non-overlapping local basis from the reshaped training matrix. Throws
/// ErrorCode::dimension for q > J and ErrorCode::layout for a wrong layout.
PodBasis build_lpod(const LocalSnapshotMatrix& local, const SubdomainLayout& layout, Index q);
PodBasis build_lpod(const SvdResult& svd, const SubdomainLayout& layout, Index q);

/// Overlapping local basis from the kernel-weighted local matrix. Throws
/// ErrorCode::degenerate_basis when the Gram matrix is not positive definite.
PodBasis build_lopod(const LocalSnapshotMatrix& weighted, const SubdomainLayout& layout,
                     const KernelSpec& kernel, Index q);
PodBasis build_lopod(const SvdResult& svd, const SubdomainLayout& layout,
                     const KernelSpec& kernel, Index q);

/// Phi = I_n; the reduced model then reproduces the full model.
PodBasis identity_basis(Index n);

struct ProjectionErrorReport {
  std::vector<double> times;
  std::vector<double> errors;  ///< ||P u - u|| / ||u|| per snapshot
  double mean = 0.0;
  int skipped = 0;             ///< zero-norm snapshots
};

ProjectionErrorReport projection_error(const PodBasis& basis, const SnapshotSet& set,
                                       std::initializer_list<Split> filter);

/// RPOD little-endian format:
///   "RPOD" | u32 version=1 | u8 variant | u8 dims | u32 N | u32 r
///   | local variants only: u8 mode | u32 I (1D) or u32 Ix, u32 Iy (2D) | u32 J
///     | u32 n, f64 L (1D) or u32 Nx, u32 Ny, f64 x_min, x_max, y_min, y_max (2D)
///   | u32 rows | u32 cols | f64 block[rows*cols] column-major
///   | u32 count | f64 singular_values[count]
/// For gpod `dims` is written as 0 (no layout).
void save_basis(const PodBasis& basis, const std::string& path);
PodBasis load_basis(const std::string& path);
std::vector<char> encode_basis(const PodBasis& basis);
PodBasis decode_basis(std::vector<char> bytes);

}  // namespace rombox
