#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "imsel/baselines.hpp"
#include "imsel/dataset.hpp"

namespace imsel {

/// One simulation configuration: true coefficients, AR(1) predictor
/// correlation rho (Omega_jk = rho^|j-k|) and noise scale sigma.
struct Scenario {
  int p = 0;
  Eigen::VectorXd beta;
  double rho = 0.0;
  double sigma = 1.0;
  std::string label;

  std::vector<int> truth() const;  // 1-based indices of nonzero beta
};

/// The six built-in configurations, labelled "1".."6".
std::vector<Scenario> builtin_scenarios();
Scenario builtin_scenario(const std::string& label);

/// Reads a scenario from a JSON file with keys {label, p, beta, rho, sigma}.
Scenario scenario_from_json(const std::string& path);

enum class Outcome { kTrue, kParsimonious, kInclusive, kOther };

/// True if selected == truth, Parsimonious if strictly contained,
/// Inclusive if strictly containing, Other otherwise. "True or
/// parsimonious" (selected subset of truth) means no irrelevant
/// variable was included.
Outcome classify(const std::vector<int>& selected, const std::vector<int>& truth);

struct SimResult {
  std::string scenario;
  int n = 0;
  Method method = Method::kIm;
  std::int64_t reps = 0;
  std::int64_t true_count = 0;
  std::int64_t parsimonious = 0;
  std::int64_t inclusive = 0;
  std::int64_t other = 0;
  std::int64_t errors = 0;  // replicates lost to fit failures

  std::int64_t true_or_parsimonious() const { return true_count + parsimonious; }
  double fwer() const {
    return 1.0 - static_cast<double>(true_or_parsimonious()) /
                     static_cast<double>(reps);
  }
};

struct SimConfig {
  std::vector<Scenario> scenarios;
  std::vector<Method> methods;
  std::vector<int> ns;
  std::int64_t reps = 1000;
  double alpha = 0.05;
  std::int64_t B = 20000;  // per-replicate max-norm sample count
  std::uint64_t seed = 0;
  int folds = 10;
  int threads = 0;
};

/// Draws a dataset for the scenario: X rows iid N_p(0, Omega) via the
/// Cholesky factor of Omega, then y = X beta + sigma * eps. The whole
/// draw is a deterministic function of the seed.
Dataset generate(const Scenario& scenario, int n, std::uint64_t seed);

/// Runs every (scenario, n, method) cell for `reps` replicates with
/// deterministically derived per-replicate seeds. X is redrawn each
/// replicate; the IM method rebuilds its max-norm distribution per
/// replicate since L depends on X. Fit failures are counted per cell,
/// not fatal. Results are independent of the thread count.
std::vector<SimResult> run(const SimConfig& config);

/// Writes results.csv plus one scenario_<label>.svg per scenario
/// (panels: true, parsimonious, true-or-parsimonious, inclusive, with a
/// reference line at 100*(1-alpha) in the true-or-parsimonious panel).
void report(const std::vector<SimResult>& results, const std::string& out_dir,
            const SimConfig& config);

}  // namespace imsel
