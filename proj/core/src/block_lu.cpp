#include "rombox/detail/block_lu.hpp"

#include <algorithm>
#include <set>

namespace rombox::detail {
namespace {

std::vector<int> minimum_degree_order(std::vector<std::set<int>> graph) {
  const int n = static_cast<int>(graph.size());
  std::vector<bool> done(n, false);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    std::size_t best_degree = 0;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (best < 0 || graph[v].size() < best_degree) {
        best = v;
        best_degree = graph[v].size();
      }
    }
    done[best] = true;
    order.push_back(best);
    const std::set<int> clique = graph[best];
    for (int a : clique) {
      graph[a].erase(best);
      for (int b : clique) {
        if (a != b) graph[a].insert(b);
      }
    }
  }
  return order;
}

}  // namespace

std::optional<BlockSparseLu> BlockSparseLu::factor(const SparseMatrix& matrix, Index block_size) {
  const Index n = matrix.rows();
  if (block_size < 1 || n == 0 || matrix.cols() != n || n % block_size != 0) return std::nullopt;
  const int blocks = static_cast<int>(n / block_size);
  std::vector<std::set<int>> graph(blocks);
  for (Index r = 0; r < n; ++r) {
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
      const int bi = static_cast<int>(it.row() / block_size);
      const int bj = static_cast<int>(it.col() / block_size);
      if (bi != bj && it.value() != 0.0) {
        graph[bi].insert(bj);
        graph[bj].insert(bi);
      }
    }
  }

  BlockSparseLu lu;
  lu.block_ = block_size;
  lu.order_ = minimum_degree_order(graph);
  std::vector<Index> perm(n);  // permuted index -> original index
  for (int k = 0; k < blocks; ++k) {
    for (Index m = 0; m < block_size; ++m) perm[k * block_size + m] = lu.order_[k] * block_size + m;
  }
  std::vector<Index> inverse(n);
  for (Index i = 0; i < n; ++i) inverse[perm[i]] = i;

  Matrix a = Matrix::Zero(n, n);
  for (Index r = 0; r < n; ++r) {
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
      a(inverse[it.row()], inverse[it.col()]) = it.value();
    }
  }
  const double scale = a.cwiseAbs().maxCoeff();
  // Right-looking elimination that skips structural zeros; entries outside
  // the fill pattern stay exactly zero.
  std::vector<Index> rows, cols;
  for (Index k = 0; k < n; ++k) {
    const double pivot = a(k, k);
    if (!(std::abs(pivot) > 1e-13 * scale)) return std::nullopt;
    rows.clear();
    cols.clear();
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) != 0.0) {
        a(i, k) /= pivot;
        rows.push_back(i);
      }
    }
    for (Index j = k + 1; j < n; ++j) {
      if (a(k, j) != 0.0) cols.push_back(j);
    }
    for (Index j : cols) {
      const double u = a(k, j);
      for (Index i : rows) a(i, j) -= a(i, k) * u;
    }
  }

  const Index b = block_size;
  lu.rows_.resize(blocks);
  for (int k = 0; k < blocks; ++k) {
    Row& row = lu.rows_[k];
    std::vector<int> lower_pos, upper_pos;
    for (int j = 0; j < blocks; ++j) {
      if (j == k || !a.block(k * b, j * b, b, b).any()) continue;
      (j < k ? lower_pos : upper_pos).push_back(j);
    }
    row.lower.resize(b, b * static_cast<Index>(lower_pos.size()));
    for (std::size_t m = 0; m < lower_pos.size(); ++m) {
      row.lower.middleCols(static_cast<Index>(m) * b, b) = a.block(k * b, lower_pos[m] * b, b, b);
      row.lower_ids.push_back(lu.order_[lower_pos[m]]);
    }
    row.upper.resize(b, b * static_cast<Index>(upper_pos.size()));
    for (std::size_t m = 0; m < upper_pos.size(); ++m) {
      row.upper.middleCols(static_cast<Index>(m) * b, b) = a.block(k * b, upper_pos[m] * b, b, b);
      row.upper_ids.push_back(lu.order_[upper_pos[m]]);
    }
    const Matrix diag = a.block(k * b, k * b, b, b);
    row.unit_lower_diag = diag.triangularView<Eigen::StrictlyLower>();
    row.unit_lower_diag.diagonal().setOnes();
    const Matrix upper = diag.triangularView<Eigen::Upper>();
    row.diag_upper_inverse =
        upper.triangularView<Eigen::Upper>().solve(Matrix::Identity(b, b));
    if (!row.diag_upper_inverse.allFinite()) return std::nullopt;
  }

  Vector probe = Vector::Ones(n);
  Vector x = probe;
  lu.solve_in_place(x);
  if (!x.allFinite() || (matrix * x - probe).norm() > 1e-9 * probe.norm()) return std::nullopt;
  return lu;
}

void BlockSparseLu::solve_in_place(Vector& x) const {
  const Index b = block_;
  const int blocks = static_cast<int>(order_.size());
  Index widest = 0;
  for (const Row& row : rows_) widest = std::max({widest, row.lower.cols(), row.upper.cols()});
  Vector gathered(widest);
  Vector tmp(b);
  for (int k = 0; k < blocks; ++k) {
    const Row& row = rows_[k];
    auto xk = x.segment(order_[k] * b, b);
    const Index m = static_cast<Index>(row.lower_ids.size());
    if (m > 0) {
      for (Index j = 0; j < m; ++j) gathered.segment(j * b, b) = x.segment(row.lower_ids[j] * b, b);
      xk.noalias() -= row.lower * gathered.head(m * b);
    }
    row.unit_lower_diag.triangularView<Eigen::UnitLower>().solveInPlace(xk);
  }
  for (int k = blocks - 1; k >= 0; --k) {
    const Row& row = rows_[k];
    auto xk = x.segment(order_[k] * b, b);
    const Index m = static_cast<Index>(row.upper_ids.size());
    if (m > 0) {
      for (Index j = 0; j < m; ++j) gathered.segment(j * b, b) = x.segment(row.upper_ids[j] * b, b);
      xk.noalias() -= row.upper * gathered.head(m * b);
    }
    tmp.noalias() = row.diag_upper_inverse * xk;
    xk = tmp;
  }
}

Index BlockSparseLu::stored_blocks() const noexcept {
  Index total = 0;
  for (const Row& row : rows_) total += static_cast<Index>(row.lower_ids.size() + row.upper_ids.size());
  return total;
}

}  // namespace rombox::detail
