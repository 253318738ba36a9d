#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imsel/dataset.hpp"

namespace imsel {

enum class Method { kIm, kAic, kBic, kLassoCv, kAdaptiveLassoCv };

std::string method_name(Method m);

/// Parses "im", "aic", "bic", "lasso", "alasso" (case sensitive).
Method parse_method(const std::string& name);

enum class Criterion { kAic, kBic };

enum class SearchMode { kAuto, kExhaustive, kStepwise };

struct BaselineChoice {
  Method method = Method::kAic;
  std::vector<int> selected;  // 1-based indices, ascending
  double score = 0.0;         // criterion value, or chosen lambda for lasso
};

/// Information-criterion subset selection on a centered dataset:
/// minimizes n*log(RSS_I / n) + penalty*|I| with penalty 2 (AIC) or
/// log(n) (BIC). Exhaustive over all 2^p subsets for p <= 20 in kAuto
/// mode, forward stepwise beyond that.
BaselineChoice ic_select(const Dataset& data, Criterion criterion,
                         SearchMode mode = SearchMode::kAuto);

/// Lasso (or adaptive lasso) with k-fold cross-validation over a
/// 100-point log-spaced lambda path from lambda_max down to
/// 1e-3*lambda_max. Coordinate descent on 0.5*||y - X b||^2 / n +
/// lambda * sum_j w_j |b_j|; adaptive weights are 1/|OLS beta_j|.
/// Fold assignment is a deterministic function of (n, folds, seed).
BaselineChoice lasso_cv_select(const Dataset& data, int folds = 10,
                               bool adaptive = false, std::uint64_t seed = 0);

/// Single lasso solve at a fixed lambda (unit weights), exposed for
/// testing against the orthonormal-design soft-threshold solution.
Eigen::VectorXd lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double lambda);

}  // namespace imsel
