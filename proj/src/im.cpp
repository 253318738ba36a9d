#include "imsel/im.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace imsel {
namespace {

void check_match(const ThetaFit& fit, const MaxNormDist& dist) {
  if (fit.T.size() != dist.p()) {
    throw std::invalid_argument("im: fit has p=" + std::to_string(fit.T.size()) +
                                " but distribution has p=" + std::to_string(dist.p()));
  }
}

}  // namespace

double assertion_belief(const ThetaFit& fit, const MaxNormDist& dist, int j) {
  check_match(fit, dist);
  if (j < 1 || j > fit.T.size()) {
    throw std::invalid_argument("assertion_belief: index out of range");
  }
  return cdf(dist, std::fabs(fit.T(j - 1)));
}

double model_plausibility(const ThetaFit& fit, const MaxNormDist& dist,
                          const std::vector<int>& I) {
  check_match(fit, dist);
  const Eigen::Index p = fit.T.size();
  std::vector<bool> in(static_cast<std::size_t>(p), false);
  for (int idx : I) {
    if (idx < 1 || idx > p) throw std::invalid_argument("model_plausibility: index out of range");
    in[static_cast<std::size_t>(idx - 1)] = true;
  }
  double max_out = 0.0;  // max over the empty complement is 0
  for (Eigen::Index i = 0; i < p; ++i) {
    if (!in[static_cast<std::size_t>(i)]) max_out = std::max(max_out, std::fabs(fit.T(i)));
  }
  return 1.0 - cdf(dist, max_out);
}

PlausibilityTable plausibility_table(const ThetaFit& fit, const MaxNormDist& dist) {
  check_match(fit, dist);
  const Eigen::Index p = fit.T.size();

  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::fabs(fit.T(a)) < std::fabs(fit.T(b));
  });

  PlausibilityTable table;
  table.pi.reserve(order.size());
  table.abs_t_sorted.resize(p);
  table.eta.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const int orig = order[static_cast<std::size_t>(j)];
    table.pi.push_back(orig + 1);
    table.abs_t_sorted(j) = std::fabs(fit.T(orig));
    table.eta(j) = 1.0 - cdf(dist, table.abs_t_sorted(j));
    table.names_ordered.push_back(
        orig < static_cast<Eigen::Index>(fit.names.size()) ? fit.names[orig] : "");
  }
  return table;
}

SelectionResult select(const PlausibilityTable& table, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("select: alpha must lie in (0, 1)");
  }
  const Eigen::Index p = table.eta.size();

  SelectionResult res;
  res.alpha = alpha;
  res.j_star = 0;
  for (Eigen::Index j = p; j >= 1; --j) {
    if (table.eta(j - 1) > alpha) {
      res.j_star = static_cast<int>(j);
      break;
    }
  }
  res.eta_at_boundary = res.j_star >= 1 ? table.eta(res.j_star - 1) : 1.0;
  for (Eigen::Index j = res.j_star; j < p; ++j) {
    res.selected.push_back(table.pi[static_cast<std::size_t>(j)]);
  }
  std::sort(res.selected.begin(), res.selected.end());
  return res;
}

double singleton_plausibility(const ThetaFit& fit, const MaxNormDist& dist,
                              const Eigen::VectorXd& theta) {
  check_match(fit, dist);
  if (theta.size() != fit.theta_hat.size()) {
    throw std::invalid_argument("singleton_plausibility: theta dimension mismatch");
  }
  const double dev =
      ((fit.theta_hat - theta) / fit.sigma_hat).cwiseAbs().maxCoeff();
  return 1.0 - cdf(dist, dev);
}

PosiRegion posi_region(const ThetaFit& fit, const MaxNormDist& dist, double alpha) {
  check_match(fit, dist);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("posi_region: alpha must lie in (0, 1)");
  }
  PosiRegion region;
  region.alpha = alpha;
  region.k_alpha = quantile(dist, 1.0 - alpha);
  region.theta_center = fit.theta_hat;
  region.theta_halfwidth = fit.sigma_hat * region.k_alpha;

  const Eigen::Index p = fit.beta_hat.size();
  region.beta_intervals.resize(p, 2);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double half = fit.sigma_hat * std::sqrt(fit.D(i)) * region.k_alpha;
    region.beta_intervals(i, 0) = fit.beta_hat(i) - half;
    region.beta_intervals(i, 1) = fit.beta_hat(i) + half;
  }
  return region;
}

}  // namespace imsel
