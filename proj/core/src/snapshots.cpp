#include "rombox/snapshots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rombox/detail/binary_io.hpp"
#include "rombox/error.hpp"

namespace rombox {
namespace {

constexpr std::uint32_t kSnapshotVersion = 1;

bool matches(Split label, std::initializer_list<Split> filter) {
  return std::find(filter.begin(), filter.end(), label) != filter.end();
}

void check_layout_size(Index rows, const SubdomainLayout& layout) {
  if (rows != layout.grid_size()) {
    throw Error(ErrorCode::grid_mismatch, "snapshot state size " + std::to_string(rows) +
                                              " does not match the layout grid size " +
                                              std::to_string(layout.grid_size()));
  }
}

// Column t * I + i gets subdomain i of snapshot t, optionally weighted.
LocalSnapshotMatrix gather_local(const Matrix& snapshots, const SubdomainLayout& layout,
                                 const std::vector<Vector>* weights) {
  if (snapshots.cols() == 0) throw Error(ErrorCode::empty_snapshot, "no snapshots to assemble");
  check_layout_size(snapshots.rows(), layout);
  const int count = layout.subdomain_count();
  const Index points = layout.points_per_subdomain();
  LocalSnapshotMatrix local;
  local.subdomains = count;
  local.snapshots = snapshots.cols();
  local.kernel_weighted = weights != nullptr;
  local.data.resize(points, snapshots.cols() * count);
  for (Index t = 0; t < snapshots.cols(); ++t) {
    for (int s = 0; s < count; ++s) {
      const auto& idx = layout.indices[s];
      auto column = local.data.col(t * count + s);
      for (Index k = 0; k < points; ++k) {
        const double value = snapshots(idx[k], t);
        column[k] = weights ? (*weights)[s][k] * value : value;
      }
    }
  }
  return local;
}

}  // namespace

const char* to_string(Split split) noexcept {
  switch (split) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::extrapolation: return "extrapolation";
    case Split::excluded: return "excluded";
  }
  return "unknown";
}

std::vector<Index> SnapshotSet::columns(std::initializer_list<Split> filter) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (matches(split[i], filter)) out.push_back(static_cast<Index>(i));
  }
  return out;
}

std::vector<Split> label_splits(std::span<const double> times, double train_end,
                                double val_end) {
  return label_splits(times, train_end, train_end, val_end);
}

std::vector<Split> label_splits(std::span<const double> times, double train_end,
                                double val_start, double val_end) {
  if (!(train_end <= val_start && val_start < val_end)) {
    throw Error(ErrorCode::invalid_split,
                "split boundaries must satisfy train_end <= val_start < val_end");
  }
  std::vector<Split> labels;
  labels.reserve(times.size());
  for (double t : times) {
    if (t <= train_end) {
      labels.push_back(Split::train);
    } else if (t <= val_start) {
      labels.push_back(Split::excluded);
    } else if (t <= val_end) {
      labels.push_back(Split::validation);
    } else {
      labels.push_back(Split::extrapolation);
    }
  }
  return labels;
}

GridMeta grid_meta(const FomModel& fom, const IntegratorSpec& spec) {
  GridMeta meta;
  meta.dims = fom.dimension();
  if (meta.dims == 1) {
    const auto& g = fom.grid_1d();
    meta.nx = g.n;
    meta.ny = 1;
    meta.length_x = g.length;
  } else {
    const auto& g = fom.grid_2d();
    meta.nx = g.nx;
    meta.ny = g.ny;
    meta.length_x = g.length_x();
    meta.length_y = g.length_y();
  }
  meta.dt = spec.dt;
  meta.stride = spec.snapshot_stride;
  return meta;
}

SnapshotSet make_snapshot_set(const Trajectory& trajectory, GridMeta meta,
                              std::vector<Split> labels) {
  if (trajectory.states.empty()) throw Error(ErrorCode::empty_snapshot, "trajectory is empty");
  if (labels.size() != trajectory.states.size() || trajectory.times.size() != labels.size()) {
    throw Error(ErrorCode::dimension, "one split label per snapshot is required");
  }
  SnapshotSet set;
  const Index n = trajectory.states.front().size();
  set.data.resize(n, static_cast<Index>(trajectory.states.size()));
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    if (trajectory.states[i].size() != n) {
      throw Error(ErrorCode::dimension, "snapshot states differ in size");
    }
    set.data.col(static_cast<Index>(i)) = trajectory.states[i];
  }
  set.times = trajectory.times;
  set.split = std::move(labels);
  set.meta = meta;
  return set;
}

Matrix assemble_global(const SnapshotSet& set, std::initializer_list<Split> filter) {
  const auto cols = set.columns(filter);
  if (cols.empty()) throw Error(ErrorCode::empty_snapshot, "no snapshots match the split filter");
  Matrix out(set.state_size(), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = set.data.col(cols[i]);
  return out;
}

LocalSnapshotMatrix assemble_local(const Matrix& snapshots, const SubdomainLayout& layout) {
  if (layout.mode != LayoutMode::nonoverlap) {
    throw Error(ErrorCode::layout, "plain local assembly needs a non-overlapping layout");
  }
  return gather_local(snapshots, layout, nullptr);
}

LocalSnapshotMatrix assemble_local(const SnapshotSet& set, const SubdomainLayout& layout,
                                   std::initializer_list<Split> filter) {
  return assemble_local(assemble_global(set, filter), layout);
}

LocalSnapshotMatrix assemble_local_overlap(const Matrix& snapshots,
                                           const SubdomainLayout& layout,
                                           const KernelSpec& kernel) {
  if (layout.mode != LayoutMode::overlap) {
    throw Error(ErrorCode::layout, "kernel-weighted assembly needs an overlapping layout");
  }
  const double deviation = partition_of_unity_deviation(layout, kernel);
  if (!(deviation <= 1e-10)) {
    throw Error(ErrorCode::kernel, "kernel weights are not a partition of unity (deviation " +
                                       std::to_string(deviation) + ")");
  }
  const auto weights = kernel_weights(layout, kernel);
  return gather_local(snapshots, layout, &weights);
}

LocalSnapshotMatrix assemble_local_overlap(const SnapshotSet& set,
                                           const SubdomainLayout& layout,
                                           const KernelSpec& kernel,
                                           std::initializer_list<Split> filter) {
  return assemble_local_overlap(assemble_global(set, filter), layout, kernel);
}

std::vector<char> encode_snapshots(const SnapshotSet& set) {
  const auto& m = set.meta;
  if (m.dims != 1 && m.dims != 2) throw Error(ErrorCode::format, "snapshot dims must be 1 or 2");
  if (Index(m.nx) * m.ny != set.state_size()) {
    throw Error(ErrorCode::grid_mismatch, "grid metadata does not match the snapshot size");
  }
  if (set.times.size() != std::size_t(set.count()) || set.split.size() != set.times.size()) {
    throw Error(ErrorCode::dimension, "times and labels must match the snapshot count");
  }
  detail::ByteWriter w;
  w.bytes("RSNP");
  w.u32(kSnapshotVersion);
  w.u32(static_cast<std::uint32_t>(m.dims));
  w.u32(static_cast<std::uint32_t>(m.nx));
  if (m.dims == 2) w.u32(static_cast<std::uint32_t>(m.ny));
  w.u32(static_cast<std::uint32_t>(set.count()));
  w.f64(m.length_x);
  if (m.dims == 2) w.f64(m.length_y);
  w.f64(m.dt);
  w.u32(static_cast<std::uint32_t>(m.stride));
  w.f64s(set.times);
  w.f64s(std::span<const double>(set.data.data(), static_cast<std::size_t>(set.data.size())));
  for (Split s : set.split) w.u8(static_cast<std::uint8_t>(s));
  return w.buffer();
}

SnapshotSet decode_snapshots(std::vector<char> bytes) {
  detail::ByteReader r(std::move(bytes), "RSNP");
  r.expect_magic("RSNP");
  const std::size_t version_offset = r.offset();
  const auto version = r.u32("version");
  if (version != kSnapshotVersion) {
    throw Error(ErrorCode::format, "RSNP: unsupported version " + std::to_string(version) +
                                       " at byte offset " + std::to_string(version_offset));
  }
  SnapshotSet set;
  auto& m = set.meta;
  const std::size_t dims_offset = r.offset();
  m.dims = static_cast<int>(r.u32("dims"));
  if (m.dims != 1 && m.dims != 2) {
    throw Error(ErrorCode::format, "RSNP: dims must be 1 or 2 at byte offset " +
                                       std::to_string(dims_offset));
  }
  m.nx = static_cast<int>(r.u32("nx"));
  m.ny = m.dims == 2 ? static_cast<int>(r.u32("ny")) : 1;
  const std::uint64_t count = r.u32("snapshot count");
  m.length_x = r.f64("length_x");
  if (m.dims == 2) m.length_y = r.f64("length_y");
  m.dt = r.f64("dt");
  m.stride = static_cast<int>(r.u32("stride"));

  const std::uint64_t n = std::uint64_t(m.nx) * std::uint64_t(m.ny);
  const std::uint64_t needed = 8 * count + 8 * n * count + count;
  if (needed > r.remaining()) {
    throw Error(ErrorCode::format, "RSNP: truncated payload at byte offset " +
                                       std::to_string(r.offset()) + " (need " +
                                       std::to_string(needed) + " bytes, have " +
                                       std::to_string(r.remaining()) + ")");
  }
  set.times.resize(count);
  r.f64s(set.times, "times");
  set.data.resize(static_cast<Index>(n), static_cast<Index>(count));
  r.f64s(std::span<double>(set.data.data(), static_cast<std::size_t>(set.data.size())), "data");
  set.split.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t at = r.offset();
    const auto label = r.u8("label");
    if (label > static_cast<std::uint8_t>(Split::excluded)) {
      throw Error(ErrorCode::format, "RSNP: invalid split label " + std::to_string(label) +
                                         " at byte offset " + std::to_string(at));
    }
    set.split[i] = static_cast<Split>(label);
  }
  r.expect_end();
  return set;
}

void save_snapshots(const SnapshotSet& set, const std::string& path) {
  detail::write_file(path, encode_snapshots(set));
}

SnapshotSet load_snapshots(const std::string& path) { return decode_snapshots(detail::read_file(path)); }

}  // namespace rombox
