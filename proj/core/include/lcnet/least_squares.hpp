#pragma once

#include <Eigen/Dense>

namespace lcnet {

struct LeastSquaresResult {
  Eigen::VectorXd coefficients;
  Eigen::Index rank = 0;
  /// Numerical rank below the column count.
  bool rank_deficient = false;
};

/// Minimizer of ||A c - y||^2 + lambda ||c||^2 through a thin SVD of A.
/// lambda > 0 gives the unique ridge solution; lambda == 0 gives the
/// minimum-norm least-squares solution with singular values below
/// max(rows, cols) * eps * sigma_max treated as zero.
/// Throws ShapeError when rows(A) != size(y), std::invalid_argument when
/// lambda is negative or not finite.
LeastSquaresResult least_squares_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets,
                                       double lambda);

}  // namespace lcnet
