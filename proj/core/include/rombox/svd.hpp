#pragma once

#include "rombox/linalg.hpp"

namespace rombox {

/// Leading left singular vectors and singular values. Each column's largest
/// magnitude entry is positive (lowest index wins ties).
struct SvdResult {
  Matrix left;
  Vector singular_values;
};

/// Thin SVD truncated to k modes. Throws ErrorCode::dimension when
/// k > min(rows, cols) or k < 1; ErrorCode::invalid_input for non-finite X.
SvdResult truncated_svd(const Matrix& snapshots, Index k);

/// All min(rows, cols) modes.
SvdResult thin_svd(const Matrix& snapshots);

/// First k modes of an existing decomposition.
SvdResult truncate(const SvdResult& svd, Index k);

/// Flip column signs in place so the largest-magnitude entry is positive.
void normalize_signs(Matrix& vectors);

}  // namespace rombox
