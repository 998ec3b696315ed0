#pragma once

#include <optional>
#include <vector>

#include "rombox/linalg.hpp"

namespace rombox::detail {

/// LU factors of a matrix with a dense-block sparsity pattern (b x b blocks).
/// Blocks are eliminated in greedy minimum-degree order on the block graph and
/// without pivoting, so only use it for matrices whose leading pivots are
/// safe, e.g. ones with a positive definite symmetric part. `factor` returns
/// nullopt when a pivot vanishes or the residual probe fails.
class BlockSparseLu {
 public:
  static std::optional<BlockSparseLu> factor(const SparseMatrix& matrix, Index block_size);

  void solve_in_place(Vector& x) const;
  Index size() const noexcept { return block_ * static_cast<Index>(order_.size()); }
  /// Stored off-diagonal blocks in L and U together.
  Index stored_blocks() const noexcept;

 private:
  struct Row {
    std::vector<int> lower_ids;  ///< earlier-eliminated blocks
    Matrix lower;                ///< b x (b * lower_ids.size())
    Matrix unit_lower_diag;      ///< strict lower part of the diagonal block
    std::vector<int> upper_ids;
    Matrix upper;
    Matrix diag_upper_inverse;
  };

  Index block_ = 0;
  std::vector<int> order_;  ///< elimination position -> block id
  std::vector<Row> rows_;   ///< by elimination position
};

}  // namespace rombox::detail
