#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace imsel {

/// A regression dataset: response y (length n), predictor matrix X
/// (n x p) and one label per predictor column.
struct Dataset {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> names;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return X.cols(); }
};

/// Returns a copy with y and every column of X shifted to mean zero.
/// Exact two-pass means; n, p and names are unchanged. Idempotent up
/// to round-off.
Dataset center(const Dataset& data);

}  // namespace imsel
