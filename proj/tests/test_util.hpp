#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

#include "imsel/csv.hpp"
#include "imsel/dataset.hpp"
#include "imsel/rng.hpp"

namespace testutil {

inline std::string prostate_path() {
  return std::string(IMSEL_DATA_DIR) + "/prostate.csv";
}

inline imsel::Dataset prostate_centered() {
  return imsel::center(imsel::read_dataset_csv(prostate_path(), "lpsa"));
}

// Published reference values for the prostate analysis, ordered by
// ascending |T|: gleason, pgg45, lcp, age, lbph, lweight, svi, lcavol.
inline const std::array<const char*, 8>& prostate_order() {
  static const std::array<const char*, 8> names = {
      "gleason", "pgg45", "lcp", "age", "lbph", "lweight", "svi", "lcavol"};
  return names;
}
inline const std::array<double, 8>& prostate_abs_t() {
  static const std::array<double, 8> t = {0.288, 1.029, 1.165, 1.768,
                                          1.842, 2.688, 3.154, 6.715};
  return t;
}
inline const std::array<double, 8>& prostate_eta() {
  static const std::array<double, 8> eta = {1.0000, 0.9193, 0.8585, 0.4502,
                                            0.4000, 0.0646, 0.0177, 0.0000};
  return eta;
}

// Random Gaussian dataset with the given coefficient vector.
inline imsel::Dataset random_dataset(int n, const Eigen::VectorXd& beta,
                                     double sigma, std::uint64_t seed) {
  const int p = static_cast<int>(beta.size());
  imsel::Rng rng(seed);
  imsel::Dataset data;
  data.X.resize(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) data.X(i, j) = rng.normal();
  }
  data.y = data.X * beta;
  for (int i = 0; i < n; ++i) data.y(i) += sigma * rng.normal();
  for (int j = 0; j < p; ++j) data.names.push_back("x" + std::to_string(j + 1));
  return data;
}

inline imsel::Dataset random_dataset(int n, int p, std::uint64_t seed) {
  imsel::Rng rng(imsel::derive_seed(seed, 99));
  Eigen::VectorXd beta(p);
  for (int j = 0; j < p; ++j) beta(j) = rng.normal();
  return random_dataset(n, beta, 1.0, seed);
}

}  // namespace testutil
