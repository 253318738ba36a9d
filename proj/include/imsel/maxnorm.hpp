#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace imsel {

/// Monte Carlo representation of F, the distribution function of
/// ||U||_inf where U ~ t_p(0, L; nu) and L is a correlation-like SPD
/// matrix with unit diagonal.
///
/// Samples are generated as ||z / sqrt(s / nu)||_inf with z = chol(L) *
/// (iid standard normals) and s ~ ChiSq(nu), in fixed-size chunks with
/// SplitMix64-derived per-chunk seeds feeding MT19937-64. The result is
/// bit-identical for a given (L, nu, B, seed) regardless of how many
/// threads generate it.
struct MaxNormDist {
  int nu = 0;
  Eigen::MatrixXd chol_L;        // lower-triangular Cholesky factor of L
  std::vector<double> samples;   // sorted nondecreasing, all >= 0
  std::uint64_t seed = 0;
  std::int64_t B = 0;

  Eigen::Index p() const { return chol_L.rows(); }
};

/// Draws B max-norm samples. Throws CholeskyFailure if L is not
/// numerically positive definite and std::invalid_argument on a
/// non-symmetric or non-unit-diagonal L, or nu < 1, or B < 1.
/// threads = 0 means use the hardware default.
MaxNormDist build_maxnorm(const Eigen::MatrixXd& L, int nu, std::int64_t B,
                          std::uint64_t seed, int threads = 0);

/// Empirical CDF: (#samples <= c) / B, by binary search. NaN input is a
/// hard error.
double cdf(const MaxNormDist& dist, double c);

/// Empirical quantile: the ceil(q * B)-th order statistic, q in (0, 1).
double quantile(const MaxNormDist& dist, double q);

/// Resolves a thread-count request: explicit value if > 0, otherwise
/// the IMSEL_THREADS environment variable, otherwise the hardware
/// concurrency.
int resolve_threads(int requested);

}  // namespace imsel
