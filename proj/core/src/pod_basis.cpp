#include "rombox/pod_basis.hpp"

#include <cmath>
#include <string>

#include "rombox/detail/binary_io.hpp"
#include "rombox/error.hpp"

namespace rombox {
namespace {

constexpr std::uint32_t kBasisVersion = 1;

using ColSparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;

}  // namespace

const char* to_string(PodVariant variant) noexcept {
  switch (variant) {
    case PodVariant::gpod: return "gpod";
    case PodVariant::lpod: return "lpod";
    case PodVariant::lopod: return "lopod";
  }
  return "unknown";
}

PodVariant parse_variant(const std::string& name) {
  if (name == "gpod") return PodVariant::gpod;
  if (name == "lpod") return PodVariant::lpod;
  if (name == "lopod") return PodVariant::lopod;
  throw Error(ErrorCode::invalid_input,
              "unknown basis variant '" + name + "' (expected gpod, lpod or lopod)");
}

PodBasis PodBasis::global(Matrix phi, Vector singular_values) {
  if (phi.cols() < 1 || phi.rows() < phi.cols()) {
    throw Error(ErrorCode::dimension, "global basis must be N x r with 1 <= r <= N");
  }
  PodBasis basis;
  basis.variant_ = PodVariant::gpod;
  basis.state_size_ = phi.rows();
  basis.rank_ = phi.cols();
  basis.block_ = std::move(phi);
  basis.singular_values_ = std::move(singular_values);
  basis.finish();
  return basis;
}

PodBasis PodBasis::local(PodVariant variant, Matrix block, Vector singular_values,
                         SubdomainLayout layout, std::optional<KernelSpec> kernel) {
  if (variant == PodVariant::gpod) {
    throw Error(ErrorCode::invalid_input, "use PodBasis::global for gpod");
  }
  const LayoutMode expected =
      variant == PodVariant::lpod ? LayoutMode::nonoverlap : LayoutMode::overlap;
  if (layout.mode != expected) {
    throw Error(ErrorCode::layout, std::string(to_string(variant)) + " needs a " +
                                       (expected == LayoutMode::overlap ? "overlapping"
                                                                        : "non-overlapping") +
                                       " layout");
  }
  if (block.rows() != layout.points_per_subdomain()) {
    throw Error(ErrorCode::dimension, "local block has " + std::to_string(block.rows()) +
                                          " rows but subdomains hold " +
                                          std::to_string(layout.points_per_subdomain()) +
                                          " points");
  }
  if (block.cols() < 1 || block.cols() > block.rows()) {
    throw Error(ErrorCode::dimension, "local mode count must satisfy 1 <= q <= J");
  }
  if (variant == PodVariant::lopod && !kernel) kernel = default_kernel(layout);
  if (variant == PodVariant::lpod) kernel.reset();

  PodBasis basis;
  basis.variant_ = variant;
  basis.state_size_ = layout.grid_size();
  basis.rank_ = block.cols() * layout.subdomain_count();
  basis.block_ = std::move(block);
  basis.singular_values_ = std::move(singular_values);
  basis.layout_ = std::make_shared<const SubdomainLayout>(std::move(layout));
  basis.kernel_ = kernel;
  basis.finish();
  return basis;
}

void PodBasis::finish() {
  if (!block_.allFinite()) throw Error(ErrorCode::invalid_input, "basis contains non-finite values");
  if (variant_ == PodVariant::gpod) {
    gram_ = block_.transpose() * block_;
    return;
  }
  const Index q = block_.cols();
  const Index points = block_.rows();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(points * q * layout_->subdomain_count()));
  for (int s = 0; s < layout_->subdomain_count(); ++s) {
    const auto& idx = layout_->indices[s];
    for (Index m = 0; m < q; ++m) {
      for (Index k = 0; k < points; ++k) {
        const double v = block_(k, m);
        if (v != 0.0) triplets.emplace_back(idx[k], s * q + m, v);
      }
    }
  }
  assembled_.resize(state_size_, rank_);
  assembled_.setFromTriplets(triplets.begin(), triplets.end());

  const ColSparse gamma = assembled_;
  const ColSparse gram_sparse = (gamma.transpose() * gamma).pruned();
  gram_ = Matrix(gram_sparse);

  if (variant_ == PodVariant::lopod) {
    auto factor = std::make_shared<Eigen::LLT<Matrix>>(gram_);
    if (factor->info() != Eigen::Success || !(factor->rcond() > 1e-14)) {
      throw Error(ErrorCode::degenerate_basis,
                  "Gram matrix of the overlapping basis is not positive definite");
    }
    gram_factor_ = std::move(factor);
  }
}

SparseMatrix PodBasis::assembled() const {
  if (variant_ == PodVariant::gpod) return block_.sparseView();
  return assembled_;
}

Vector PodBasis::apply(const Vector& coefficients) const {
  if (coefficients.size() != rank_) {
    throw Error(ErrorCode::dimension, "coefficient vector has size " +
                                          std::to_string(coefficients.size()) + ", expected " +
                                          std::to_string(rank_));
  }
  if (variant_ == PodVariant::gpod) return block_ * coefficients;
  const Index q = block_.cols();
  const int count = layout_->subdomain_count();
  const Matrix local = block_ * Eigen::Map<const Matrix>(coefficients.data(), q, count);
  Vector state = Vector::Zero(state_size_);
  for (int s = 0; s < count; ++s) {
    const auto& idx = layout_->indices[s];
    for (Index k = 0; k < local.rows(); ++k) state[idx[k]] += local(k, s);
  }
  return state;
}

Vector PodBasis::apply_transpose(const Vector& state) const {
  if (state.size() != state_size_) {
    throw Error(ErrorCode::grid_mismatch, "state has size " + std::to_string(state.size()) +
                                              ", basis expects " + std::to_string(state_size_));
  }
  if (variant_ == PodVariant::gpod) return block_.transpose() * state;
  const int count = layout_->subdomain_count();
  Matrix gathered(block_.rows(), count);
  for (int s = 0; s < count; ++s) {
    const auto& idx = layout_->indices[s];
    for (Index k = 0; k < gathered.rows(); ++k) gathered(k, s) = state[idx[k]];
  }
  const Matrix reduced = block_.transpose() * gathered;
  return Eigen::Map<const Vector>(reduced.data(), reduced.size());
}

Vector PodBasis::solve_gram(const Vector& rhs) const {
  if (gram_factor_) return gram_factor_->solve(rhs);
  return rhs;
}

Matrix PodBasis::solve_gram(const Matrix& rhs) const {
  if (gram_factor_) return gram_factor_->solve(rhs);
  return rhs;
}

Vector PodBasis::project(const Vector& state) const { return solve_gram(apply_transpose(state)); }

Vector PodBasis::reconstruct(const Vector& coefficients) const { return apply(coefficients); }

Vector PodBasis::projector_apply(const Vector& state) const { return apply(project(state)); }

PodBasis build_gpod(const Matrix& training, Index r) {
  return build_gpod(truncated_svd(training, r), r);
}

PodBasis build_gpod(const SvdResult& svd, Index r) {
  const SvdResult kept = truncate(svd, r);
  return PodBasis::global(kept.left, kept.singular_values);
}

PodBasis build_lpod(const LocalSnapshotMatrix& local, const SubdomainLayout& layout, Index q) {
  if (local.kernel_weighted) {
    throw Error(ErrorCode::layout, "lpod needs an unweighted local snapshot matrix");
  }
  if (local.subdomains != layout.subdomain_count() ||
      local.data.rows() != layout.points_per_subdomain()) {
    throw Error(ErrorCode::layout, "local snapshot matrix does not match the layout");
  }
  return build_lpod(truncated_svd(local.data, q), layout, q);
}

PodBasis build_lpod(const SvdResult& svd, const SubdomainLayout& layout, Index q) {
  const SvdResult kept = truncate(svd, q);
  return PodBasis::local(PodVariant::lpod, kept.left, kept.singular_values, layout, std::nullopt);
}

PodBasis build_lopod(const LocalSnapshotMatrix& weighted, const SubdomainLayout& layout,
                     const KernelSpec& kernel, Index q) {
  if (!weighted.kernel_weighted) {
    throw Error(ErrorCode::layout, "lopod needs a kernel-weighted local snapshot matrix");
  }
  if (weighted.subdomains != layout.subdomain_count() ||
      weighted.data.rows() != layout.points_per_subdomain()) {
    throw Error(ErrorCode::layout, "local snapshot matrix does not match the layout");
  }
  return build_lopod(truncated_svd(weighted.data, q), layout, kernel, q);
}

PodBasis build_lopod(const SvdResult& svd, const SubdomainLayout& layout,
                     const KernelSpec& kernel, Index q) {
  const SvdResult kept = truncate(svd, q);
  return PodBasis::local(PodVariant::lopod, kept.left, kept.singular_values, layout, kernel);
}

PodBasis identity_basis(Index n) {
  return PodBasis::global(Matrix::Identity(n, n), Vector::Ones(n));
}

ProjectionErrorReport projection_error(const PodBasis& basis, const SnapshotSet& set,
                                       std::initializer_list<Split> filter) {
  if (set.state_size() != basis.state_size()) {
    throw Error(ErrorCode::grid_mismatch, "snapshot size does not match the basis");
  }
  ProjectionErrorReport report;
  double sum = 0.0;
  int used = 0;
  for (Index col : set.columns(filter)) {
    const Vector u = set.data.col(col);
    const double norm = u.norm();
    if (norm == 0.0) {
      ++report.skipped;
      continue;
    }
    const double err = (basis.projector_apply(u) - u).norm() / norm;
    report.times.push_back(set.times[col]);
    report.errors.push_back(err);
    sum += err;
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::empty_snapshot, "no snapshots with nonzero norm to project");
  report.mean = sum / used;
  return report;
}

std::vector<char> encode_basis(const PodBasis& basis) {
  detail::ByteWriter w;
  w.bytes("RPOD");
  w.u32(kBasisVersion);
  w.u8(static_cast<std::uint8_t>(basis.variant()));
  const SubdomainLayout* layout = basis.layout();
  w.u8(static_cast<std::uint8_t>(layout ? layout->dims : 0));
  w.u32(static_cast<std::uint32_t>(basis.state_size()));
  w.u32(static_cast<std::uint32_t>(basis.rank()));
  if (layout) {
    w.u8(static_cast<std::uint8_t>(layout->mode));
    w.u32(static_cast<std::uint32_t>(layout->count_x));
    if (layout->dims == 2) w.u32(static_cast<std::uint32_t>(layout->count_y));
    w.u32(static_cast<std::uint32_t>(layout->points_per_subdomain()));
    if (layout->dims == 1) {
      w.u32(static_cast<std::uint32_t>(layout->grid_nx));
      w.f64(layout->length_x);
    } else {
      w.u32(static_cast<std::uint32_t>(layout->grid_nx));
      w.u32(static_cast<std::uint32_t>(layout->grid_ny));
      w.f64(layout->origin_x);
      w.f64(layout->origin_x + layout->length_x);
      w.f64(layout->origin_y);
      w.f64(layout->origin_y + layout->length_y);
    }
  }
  const Matrix& block = basis.block();
  w.u32(static_cast<std::uint32_t>(block.rows()));
  w.u32(static_cast<std::uint32_t>(block.cols()));
  w.f64s(std::span<const double>(block.data(), static_cast<std::size_t>(block.size())));
  const Vector& sv = basis.singular_values();
  w.u32(static_cast<std::uint32_t>(sv.size()));
  w.f64s(std::span<const double>(sv.data(), static_cast<std::size_t>(sv.size())));
  return w.buffer();
}

PodBasis decode_basis(std::vector<char> bytes) {
  detail::ByteReader r(std::move(bytes), "RPOD");
  r.expect_magic("RPOD");
  auto fail = [](const std::string& what, std::size_t at) {
    return Error(ErrorCode::format, "RPOD: " + what + " at byte offset " + std::to_string(at));
  };
  std::size_t at = r.offset();
  const auto version = r.u32("version");
  if (version != kBasisVersion) throw fail("unsupported version " + std::to_string(version), at);
  at = r.offset();
  const auto variant_byte = r.u8("variant");
  if (variant_byte > static_cast<std::uint8_t>(PodVariant::lopod)) {
    throw fail("invalid variant " + std::to_string(variant_byte), at);
  }
  const auto variant = static_cast<PodVariant>(variant_byte);
  at = r.offset();
  const int dims = r.u8("dims");
  if ((variant == PodVariant::gpod) != (dims == 0) || dims > 2) {
    throw fail("dims " + std::to_string(dims) + " inconsistent with variant " + to_string(variant), at);
  }
  const std::uint32_t n = r.u32("N");
  const std::uint32_t rank = r.u32("r");

  std::optional<SubdomainLayout> layout;
  if (dims != 0) {
    at = r.offset();
    const auto mode_byte = r.u8("layout mode");
    if (mode_byte > 1) throw fail("invalid layout mode " + std::to_string(mode_byte), at);
    const auto mode = static_cast<LayoutMode>(mode_byte);
    const int ix = static_cast<int>(r.u32("Ix"));
    const int iy = dims == 2 ? static_cast<int>(r.u32("Iy")) : 1;
    at = r.offset();
    const std::uint32_t points = r.u32("J");
    try {
      if (dims == 1) {
        const int nx = static_cast<int>(r.u32("grid n"));
        const double length = r.f64("L");
        layout = build_layout(build_grid_1d(nx, length), ix, mode);
      } else {
        const int nx = static_cast<int>(r.u32("Nx"));
        const int ny = static_cast<int>(r.u32("Ny"));
        const double x0 = r.f64("x_min");
        const double x1 = r.f64("x_max");
        const double y0 = r.f64("y_min");
        const double y1 = r.f64("y_max");
        layout = build_layout(build_grid_2d(nx, ny, x0, x1, y0, y1), ix, iy, mode);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::format) throw;
      throw Error(ErrorCode::format, std::string("RPOD: invalid layout: ") + e.what());
    }
    if (Index(points) != layout->points_per_subdomain() || Index(n) != layout->grid_size()) {
      throw fail("layout sizes inconsistent with the header", at);
    }
  }

  at = r.offset();
  const std::uint64_t rows = r.u32("block rows");
  const std::uint64_t cols = r.u32("block cols");
  if (8 * rows * cols > r.remaining()) {
    throw fail("truncated block (need " + std::to_string(8 * rows * cols) + " bytes)", r.offset());
  }
  Matrix block(static_cast<Index>(rows), static_cast<Index>(cols));
  r.f64s(std::span<double>(block.data(), static_cast<std::size_t>(block.size())), "block");
  const std::uint64_t count = r.u32("singular value count");
  if (8 * count > r.remaining()) throw fail("truncated singular values", r.offset());
  Vector sv(static_cast<Index>(count));
  r.f64s(std::span<double>(sv.data(), static_cast<std::size_t>(sv.size())), "singular values");
  r.expect_end();

  PodBasis basis = [&] {
    try {
      if (variant == PodVariant::gpod) return PodBasis::global(std::move(block), std::move(sv));
      std::optional<KernelSpec> kernel;
      if (variant == PodVariant::lopod) kernel = default_kernel(*layout);
      return PodBasis::local(variant, std::move(block), std::move(sv), std::move(*layout), kernel);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::degenerate_basis) throw;
      throw Error(ErrorCode::format, std::string("RPOD: invalid basis: ") + e.what());
    }
  }();
  if (basis.state_size() != Index(n) || basis.rank() != Index(rank)) {
    throw Error(ErrorCode::format, "RPOD: header sizes do not match the stored block");
  }
  return basis;
}

void save_basis(const PodBasis& basis, const std::string& path) {
  detail::write_file(path, encode_basis(basis));
}

PodBasis load_basis(const std::string& path) { return decode_basis(detail::read_file(path)); }

}  // namespace rombox
