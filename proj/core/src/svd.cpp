#include "rombox/svd.hpp"

#include <Eigen/SVD>
#include <string>

#include "rombox/error.hpp"

namespace rombox {

void normalize_signs(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (vectors.rows() > 0 && vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

SvdResult thin_svd(const Matrix& snapshots) {
  if (snapshots.size() == 0) throw Error(ErrorCode::empty_snapshot, "SVD of an empty matrix");
  if (!snapshots.allFinite()) {
    throw Error(ErrorCode::invalid_input, "snapshot matrix contains non-finite values");
  }
  Eigen::BDCSVD<Matrix> svd(snapshots, Eigen::ComputeThinU);
  SvdResult result;
  result.left = svd.matrixU();
  result.singular_values = svd.singularValues();
  normalize_signs(result.left);
  return result;
}

SvdResult truncate(const SvdResult& svd, Index k) {
  if (k < 1 || k > svd.left.cols()) {
    throw Error(ErrorCode::dimension, "cannot keep " + std::to_string(k) + " of " +
                                          std::to_string(svd.left.cols()) + " modes");
  }
  return SvdResult{svd.left.leftCols(k), svd.singular_values.head(k)};
}

SvdResult truncated_svd(const Matrix& snapshots, Index k) {
  const Index max_rank = std::min(snapshots.rows(), snapshots.cols());
  if (k < 1 || k > max_rank) {
    throw Error(ErrorCode::dimension, "requested " + std::to_string(k) +
                                          " modes but min(rows, cols) = " +
                                          std::to_string(max_rank));
  }
  return truncate(thin_svd(snapshots), k);
}

}  // namespace rombox
