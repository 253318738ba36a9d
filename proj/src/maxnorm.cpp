#include "imsel/maxnorm.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "imsel/errors.hpp"
#include "imsel/rng.hpp"

namespace imsel {
namespace {

constexpr std::int64_t kChunk = 8192;

// Fills samples[first, last) using the stream belonging to `chunk`.
void fill_chunk(const Eigen::MatrixXd& chol, int nu, std::uint64_t seed,
                std::int64_t chunk, double* first, double* last) {
  const Eigen::Index p = chol.rows();
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
  Eigen::VectorXd z(p);
  for (double* out = first; out != last; ++out) {
    for (Eigen::Index i = 0; i < p; ++i) z(i) = rng.normal();
    // u = chol * z, lower triangular; accumulate the max abs on the fly
    double maxabs = 0.0;
    for (Eigen::Index r = 0; r < p; ++r) {
      double acc = 0.0;
      for (Eigen::Index c = 0; c <= r; ++c) acc += chol(r, c) * z(c);
      maxabs = std::max(maxabs, std::fabs(acc));
    }
    const double s = rng.chi_squared(nu);
    *out = maxabs / std::sqrt(s / static_cast<double>(nu));
  }
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IMSEL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

MaxNormDist build_maxnorm(const Eigen::MatrixXd& L, int nu, std::int64_t B,
                          std::uint64_t seed, int threads) {
  const Eigen::Index p = L.rows();
  if (p < 1 || L.cols() != p) throw std::invalid_argument("build_maxnorm: L must be square");
  if (nu < 1) throw std::invalid_argument("build_maxnorm: nu must be >= 1");
  if (B < 1) throw std::invalid_argument("build_maxnorm: B must be >= 1");
  if (!L.isApprox(L.transpose(), 1e-10)) {
    throw std::invalid_argument("build_maxnorm: L must be symmetric");
  }
  if ((L.diagonal().array() - 1.0).abs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("build_maxnorm: L must have unit diagonal");
  }

  Eigen::LLT<Eigen::MatrixXd> llt(L);
  if (llt.info() != Eigen::Success) {
    throw CholeskyFailure("build_maxnorm: L is not positive definite");
  }

  MaxNormDist dist;
  dist.nu = nu;
  dist.chol_L = llt.matrixL();
  dist.seed = seed;
  dist.B = B;
  dist.samples.resize(static_cast<std::size_t>(B));

  const std::int64_t nchunks = (B + kChunk - 1) / kChunk;
  const int nthreads = std::min<std::int64_t>(resolve_threads(threads), nchunks);

  auto worker = [&](std::int64_t chunk_begin, std::int64_t chunk_end) {
    for (std::int64_t ch = chunk_begin; ch < chunk_end; ++ch) {
      const std::int64_t first = ch * kChunk;
      const std::int64_t last = std::min(B, first + kChunk);
      fill_chunk(dist.chol_L, nu, seed, ch, dist.samples.data() + first,
                 dist.samples.data() + last);
    }
  };

  if (nthreads <= 1) {
    worker(0, nchunks);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    const std::int64_t per = (nchunks + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const std::int64_t b = t * per;
      const std::int64_t e = std::min(nchunks, b + per);
      if (b >= e) break;
      pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }

  std::sort(dist.samples.begin(), dist.samples.end());
  return dist;
}

double cdf(const MaxNormDist& dist, double c) {
  if (std::isnan(c)) throw std::invalid_argument("cdf: NaN argument");
  const auto it = std::upper_bound(dist.samples.begin(), dist.samples.end(), c);
  return static_cast<double>(it - dist.samples.begin()) /
         static_cast<double>(dist.B);
}

double quantile(const MaxNormDist& dist, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("quantile: q must lie in (0, 1), got " + std::to_string(q));
  }
  const double raw = q * static_cast<double>(dist.B);
  std::int64_t k = static_cast<std::int64_t>(std::ceil(raw));
  k = std::max<std::int64_t>(1, std::min(k, dist.B));
  return dist.samples[static_cast<std::size_t>(k - 1)];
}

}  // namespace imsel
