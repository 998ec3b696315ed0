#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rombox {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Row-major storage keeps entry ordering deterministic (row by row, column
// ascending) so nonzero counts and file dumps are reproducible.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace rombox
