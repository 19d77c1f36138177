#include "lcnet/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lcnet/errors.hpp"

namespace lcnet {

LeastSquaresResult least_squares_solve(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets,
                                       double lambda) {
  if (design.rows() != targets.size()) {
    throw ShapeError("design has " + std::to_string(design.rows()) + " rows but " +
                     std::to_string(targets.size()) + " targets were given");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("regularization must be finite and nonnegative");
  }
  LeastSquaresResult out;
  out.coefficients = Eigen::VectorXd::Zero(design.cols());
  if (design.rows() == 0 || design.cols() == 0) {
    out.rank_deficient = design.cols() > 0;
    return out;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double tol = static_cast<double>(std::max(design.rows(), design.cols())) *
                     std::numeric_limits<double>::epsilon() * (sigma.size() ? sigma(0) : 0.0);

  const Eigen::VectorXd projected = svd.matrixU().transpose() * targets;
  Eigen::VectorXd filtered = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double s = sigma(i);
    if (s > tol) ++out.rank;
    if (lambda > 0.0) {
      filtered(i) = s / (s * s + lambda) * projected(i);
    } else if (s > tol) {
      filtered(i) = projected(i) / s;
    }
  }
  out.coefficients = svd.matrixV() * filtered;
  out.rank_deficient = out.rank < design.cols();
  return out;
}

}  // namespace lcnet
