#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "rombox/error.hpp"
#include "rombox/snapshots.hpp"

using namespace rombox;

namespace {

SnapshotSet small_set(int n, int count) {
  SnapshotSet set;
  set.data.resize(n, count);
  for (Index i = 0; i < set.data.size(); ++i) set.data.data()[i] = 0.25 * double(i) - 3.0;
  for (int k = 0; k < count; ++k) set.times.push_back(0.5 * k);
  set.split = label_splits(set.times, 1.0, 2.0);
  set.meta = GridMeta{1, n, 1, 2 * kPi, 0.0, 0.5, 1};
  return set;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::io;
}

}  // namespace

TEST(Splits, OneDimensionalBoundaries) {
  std::vector<double> times;
  for (int k = 0; k <= 500; ++k) times.push_back(k * 0.01);
  const auto labels = label_splits(times, 1.0, 2.0);
  int counts[4] = {0, 0, 0, 0};
  for (Split s : labels) ++counts[static_cast<int>(s)];
  EXPECT_EQ(counts[0], 101);
  EXPECT_EQ(counts[1], 100);
  EXPECT_EQ(counts[2], 300);
  EXPECT_EQ(labels[100], Split::train);
  EXPECT_EQ(labels[101], Split::validation);
}

TEST(Splits, GapIsExcluded) {
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(k * 0.4);
  const auto labels = label_splits(times, 12.0, 16.0, 20.0);
  int counts[4] = {0, 0, 0, 0};
  for (Split s : labels) ++counts[static_cast<int>(s)];
  EXPECT_EQ(counts[static_cast<int>(Split::train)], 31);
  EXPECT_EQ(counts[static_cast<int>(Split::excluded)], 10);
  EXPECT_EQ(counts[static_cast<int>(Split::validation)], 10);
  EXPECT_EQ(counts[static_cast<int>(Split::extrapolation)], 50);
}

TEST(Splits, InvalidBoundaries) {
  const std::vector<double> times{0.0, 1.0};
  EXPECT_EQ(code_of([&] { label_splits(times, 2.0, 1.0); }), ErrorCode::invalid_split);
  EXPECT_EQ(code_of([&] { label_splits(times, 1.0, 0.5, 2.0); }), ErrorCode::invalid_split);
}

TEST(Assembly, GlobalFilterKeepsTimeOrder) {
  const SnapshotSet set = small_set(6, 7);
  const Matrix train = assemble_global(set, {Split::train});
  ASSERT_EQ(train.cols(), 3);
  EXPECT_EQ(train.col(2), set.data.col(2));
  const Matrix rest = assemble_global(set, {Split::validation, Split::extrapolation});
  EXPECT_EQ(rest.cols(), 4);
  EXPECT_EQ(rest.col(0), set.data.col(3));
  EXPECT_EQ(code_of([&] { assemble_global(set, {Split::excluded}); }), ErrorCode::empty_snapshot);
}

TEST(Assembly, LocalReshapeIsTimeMajor) {
  const Grid1D g = build_grid_1d(12);
  const SubdomainLayout l = build_layout(g, 3, LayoutMode::nonoverlap);
  Matrix x(12, 2);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = double(i);
  const LocalSnapshotMatrix local = assemble_local(x, l);
  ASSERT_EQ(local.data.rows(), 4);
  ASSERT_EQ(local.data.cols(), 6);
  for (int t = 0; t < 2; ++t) {
    for (int s = 0; s < 3; ++s) {
      for (int k = 0; k < 4; ++k) EXPECT_EQ(local.data(k, t * 3 + s), x(s * 4 + k, t));
    }
  }
  EXPECT_FALSE(local.kernel_weighted);
  // Reshaping preserves the Frobenius norm.
  EXPECT_NEAR(local.data.norm(), x.norm(), 1e-12);
}

TEST(Assembly, LocalLayoutMismatch) {
  const SubdomainLayout over = build_layout(build_grid_1d(12), 3, LayoutMode::overlap);
  const SubdomainLayout non = build_layout(build_grid_1d(12), 3, LayoutMode::nonoverlap);
  EXPECT_EQ(code_of([&] { assemble_local(Matrix::Ones(12, 2), over); }), ErrorCode::layout);
  EXPECT_EQ(code_of([&] { assemble_local(Matrix::Ones(10, 2), non); }), ErrorCode::grid_mismatch);
  EXPECT_EQ(code_of([&] { assemble_local_overlap(Matrix::Ones(12, 2), non, KernelSpec{}); }),
            ErrorCode::layout);
}

TEST(Assembly, KernelWeightedSumsBackToState) {
  const Grid1D g = build_grid_1d(40);
  const SubdomainLayout l = build_layout(g, 4, LayoutMode::overlap);
  Matrix x(40, 3);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = n01(rng);
  const LocalSnapshotMatrix local = assemble_local_overlap(x, l, default_kernel(l));
  EXPECT_TRUE(local.kernel_weighted);
  ASSERT_EQ(local.data.rows(), 20);
  ASSERT_EQ(local.data.cols(), 12);
  // Partition of unity: scattering the weighted pieces reproduces u.
  for (int t = 0; t < 3; ++t) {
    Vector sum = Vector::Zero(40);
    for (int s = 0; s < 4; ++s) {
      for (int k = 0; k < 20; ++k) sum[l.indices[s][k]] += local.data(k, t * 4 + s);
    }
    EXPECT_LT((sum - x.col(t)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Rsnp, RoundTripOneAndTwoDimensional) {
  const SnapshotSet set = small_set(5, 4);
  const SnapshotSet back = decode_snapshots(encode_snapshots(set));
  EXPECT_EQ(back.data, set.data);
  EXPECT_EQ(back.times, set.times);
  EXPECT_EQ(back.split, set.split);
  EXPECT_EQ(back.meta.nx, 5);
  EXPECT_EQ(back.meta.dt, 0.5);

  SnapshotSet two;
  two.data = Matrix::Random(12, 3);
  two.times = {0.0, 0.4, 0.8};
  two.split = {Split::train, Split::excluded, Split::validation};
  two.meta = GridMeta{2, 4, 3, 2 * kPi, 2 * kPi, 0.025, 16};
  const auto path = (std::filesystem::temp_directory_path() / "rombox_test.rsnp").string();
  save_snapshots(two, path);
  const SnapshotSet loaded = load_snapshots(path);
  std::filesystem::remove(path);
  EXPECT_EQ(loaded.data, two.data);
  EXPECT_EQ(loaded.split, two.split);
  EXPECT_EQ(loaded.meta.ny, 3);
  EXPECT_EQ(loaded.meta.stride, 16);
  EXPECT_EQ(loaded.meta.length_y, 2 * kPi);
}

TEST(Rsnp, CorruptionIsReportedWithOffset) {
  const auto bytes = encode_snapshots(small_set(5, 4));
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  try {
    decode_snapshots(bad_magic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::format);
    EXPECT_NE(std::string(e.what()).find("offset 0"), std::string::npos) << e.what();
  }
  auto bad_version = bytes;
  bad_version[4] = 7;
  EXPECT_EQ(code_of([&] { decode_snapshots(bad_version); }), ErrorCode::format);
  auto truncated = bytes;
  truncated.resize(truncated.size() - 3);
  EXPECT_EQ(code_of([&] { decode_snapshots(truncated); }), ErrorCode::format);
  auto bad_label = bytes;
  bad_label.back() = 9;
  try {
    decode_snapshots(bad_label);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::format);
    EXPECT_NE(std::string(e.what()).find(std::to_string(bytes.size() - 1)), std::string::npos);
  }
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_EQ(code_of([&] { decode_snapshots(trailing); }), ErrorCode::format);
  EXPECT_EQ(code_of([&] { load_snapshots("/nonexistent/dir/x.rsnp"); }), ErrorCode::io);
}
