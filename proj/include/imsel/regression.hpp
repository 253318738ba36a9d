#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "imsel/dataset.hpp"

namespace imsel {

/// All fitted quantities of the standardized marginal association
/// theta_hat = theta + sigma_hat * U, with U ~ t_p(0, L; nu).
///
/// Conventions (deliberate, and worth reading twice):
///   * sigma_hat^2 = RSS / (n - p), the residual mean square of the
///     centered no-intercept regression as reported by standard OLS
///     output on that design.
///   * nu = n - p - 1: the residual degrees of freedom once the
///     centering step is counted. This is the df of the multivariate-t
///     reference distribution of U.
struct ThetaFit {
  Eigen::VectorXd beta_hat;    // OLS coefficients, length p
  double sigma_hat = 0.0;      // residual scale, divisor n - p
  Eigen::MatrixXd M;           // (X^T X)^{-1}, SPD
  Eigen::VectorXd D;           // diagonal of M
  Eigen::MatrixXd L;           // D^{-1/2} M D^{-1/2}, unit diagonal
  Eigen::VectorXd theta_hat;   // D^{-1/2} beta_hat
  Eigen::VectorXd T;           // theta_hat / sigma_hat
  int nu = 0;                  // n - p - 1
  std::vector<std::string> names;
};

/// Ordinary least squares on a centered dataset via column-pivoted QR.
///
/// Throws TooFewRows when n <= p + 1, SingularDesign when the smallest
/// |R_ii| of the triangular factor falls below 1e-10 times the largest,
/// and DegenerateResidual when the fit is exact (sigma_hat = 0).
ThetaFit fit(const Dataset& data);

}  // namespace imsel
