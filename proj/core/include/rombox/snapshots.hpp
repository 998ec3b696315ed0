#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rombox/fom.hpp"
#include "rombox/integrators.hpp"
#include "rombox/kernels.hpp"
#include "rombox/layout.hpp"
#include "rombox/linalg.hpp"

namespace rombox {

enum class Split : std::uint8_t { train = 0, validation = 1, extrapolation = 2, excluded = 3 };

const char* to_string(Split split) noexcept;

struct GridMeta {
  int dims = 1;
  int nx = 0;
  int ny = 1;
  double length_x = 0.0;
  double length_y = 0.0;
  double dt = 0.0;
  int stride = 1;
};

/// Time-stamped solution columns with split labels.
struct SnapshotSet {
  Matrix data;  ///< N x s, one state per column
  std::vector<double> times;
  std::vector<Split> split;
  GridMeta meta;

  Index state_size() const noexcept { return data.rows(); }
  Index count() const noexcept { return data.cols(); }
  std::vector<Index> columns(std::initializer_list<Split> filter) const;
};

/// t <= train_end: train, train_end < t <= val_end: validation, else
/// extrapolation. Throws ErrorCode::invalid_split unless train_end < val_end.
std::vector<Split> label_splits(std::span<const double> times, double train_end,
                                double val_end);

/// As above with a gap (train_end, val_start] labelled excluded.
std::vector<Split> label_splits(std::span<const double> times, double train_end,
                                double val_start, double val_end);

GridMeta grid_meta(const FomModel& fom, const IntegratorSpec& spec);

SnapshotSet make_snapshot_set(const Trajectory& trajectory, GridMeta meta,
                              std::vector<Split> labels);

/// Columns whose label is in `filter`, in time order. Throws
/// ErrorCode::empty_snapshot when nothing matches.
Matrix assemble_global(const SnapshotSet& set, std::initializer_list<Split> filter);

/// J x (I s) local snapshot matrix. Column t * I + i holds subdomain i of
/// snapshot t (time-major, subdomain-minor).
struct LocalSnapshotMatrix {
  Matrix data;
  int subdomains = 0;
  Index snapshots = 0;
  bool kernel_weighted = false;
};

/// Plain reshape for non-overlapping layouts. Throws ErrorCode::layout for
/// overlap layouts and ErrorCode::grid_mismatch for a wrong state size.
LocalSnapshotMatrix assemble_local(const Matrix& snapshots, const SubdomainLayout& layout);
LocalSnapshotMatrix assemble_local(const SnapshotSet& set, const SubdomainLayout& layout,
                                   std::initializer_list<Split> filter);

/// Kernel-weighted samples U_ij = k_i(x_j) u(x_j) for overlapping layouts
/// (midpoint rule for the box-function integrals). Throws ErrorCode::kernel
/// when the kernel weights deviate from a partition of unity by more than
/// 1e-10 at a grid point.
LocalSnapshotMatrix assemble_local_overlap(const Matrix& snapshots,
                                           const SubdomainLayout& layout,
                                           const KernelSpec& kernel);
LocalSnapshotMatrix assemble_local_overlap(const SnapshotSet& set,
                                           const SubdomainLayout& layout,
                                           const KernelSpec& kernel,
                                           std::initializer_list<Split> filter);

/// RSNP little-endian format:
///   "RSNP" | u32 version=1 | u32 dims | u32 N (1D) or u32 Nx, u32 Ny (2D)
///   | u32 s | f64 L (1D) or f64 Lx, f64 Ly (2D) | f64 dt | u32 stride
///   | f64 times[s] | f64 data[N*s] column-major | u8 labels[s]
void save_snapshots(const SnapshotSet& set, const std::string& path);

/// Throws ErrorCode::format with the byte offset on bad magic, version,
/// labels or truncation.
SnapshotSet load_snapshots(const std::string& path);

std::vector<char> encode_snapshots(const SnapshotSet& set);
SnapshotSet decode_snapshots(std::vector<char> bytes);

}  // namespace rombox
