#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "imsel/maxnorm.hpp"
#include "imsel/regression.hpp"

namespace imsel {

/// The p sub-model plausibilities eta(j) = 1 - F(|T_pi(j)|), where pi
/// ranks |T| ascending (ties broken by original column index). Row j
/// corresponds to the model containing only the variables ranked above
/// j; the full model always has plausibility 1.
struct PlausibilityTable {
  std::vector<int> pi;             // pi[j-1] = original index (1-based) of rank j
  Eigen::VectorXd abs_t_sorted;    // |T| in nondecreasing order
  Eigen::VectorXd eta;             // eta(j), nonincreasing
  std::vector<std::string> names_ordered;
};

/// Result of thresholding the plausibility table at level alpha.
struct SelectionResult {
  double alpha = 0.0;
  int j_star = 0;                  // max{j : eta(j) > alpha}, 0 if none
  std::vector<int> selected;       // 1-based original indices, ascending
  double eta_at_boundary = 1.0;    // eta(j_star) when j_star >= 1, else 1
};

/// Simultaneous (1 - alpha) region: a hyper-cube on the theta scale
/// with half-width sigma_hat * k_alpha, equivalently per-coordinate
/// intervals beta_hat_i +/- sigma_hat * sqrt(D_i) * k_alpha.
struct PosiRegion {
  double alpha = 0.0;
  double k_alpha = 0.0;            // (1 - alpha) quantile of ||U||_inf
  Eigen::VectorXd theta_center;    // theta_hat
  double theta_halfwidth = 0.0;    // sigma_hat * k_alpha
  Eigen::MatrixX2d beta_intervals; // row i: [lo, hi] for beta_i
};

/// Belief that variable j (1-based) is relevant: F(|T_j|).
double assertion_belief(const ThetaFit& fit, const MaxNormDist& dist, int j);

/// Plausibility of the model indexed by I (1-based indices): the
/// hypothesis that every variable outside I has a zero coefficient.
/// Equals 1 - F(max_{i not in I} |T_i|); the max over an empty set is 0,
/// so the full model gets plausibility 1.
double model_plausibility(const ThetaFit& fit, const MaxNormDist& dist,
                          const std::vector<int>& I);

PlausibilityTable plausibility_table(const ThetaFit& fit, const MaxNormDist& dist);

/// Smallest model whose plausibility exceeds alpha: keeps the variables
/// ranked above j_star = max{j : eta(j) > alpha}.
SelectionResult select(const PlausibilityTable& table, double alpha);

/// Plausibility of the singleton {theta}: 1 - F(||(theta_hat - theta) / sigma_hat||_inf).
double singleton_plausibility(const ThetaFit& fit, const MaxNormDist& dist,
                              const Eigen::VectorXd& theta);

PosiRegion posi_region(const ThetaFit& fit, const MaxNormDist& dist, double alpha);

}  // namespace imsel
