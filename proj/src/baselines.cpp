#include "imsel/baselines.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "imsel/errors.hpp"
#include "imsel/rng.hpp"

namespace imsel {

std::string method_name(Method m) {
  switch (m) {
    case Method::kIm: return "im";
    case Method::kAic: return "aic";
    case Method::kBic: return "bic";
    case Method::kLassoCv: return "lasso";
    case Method::kAdaptiveLassoCv: return "alasso";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "im") return Method::kIm;
  if (name == "aic") return Method::kAic;
  if (name == "bic") return Method::kBic;
  if (name == "lasso") return Method::kLassoCv;
  if (name == "alasso") return Method::kAdaptiveLassoCv;
  throw std::invalid_argument("unknown method '" + name + "'");
}

namespace {

// RSS of the sub-model given the Gram precomputations. `idx` holds
// 0-based member columns.
double subset_rss(const Eigen::MatrixXd& G, const Eigen::VectorXd& b, double yy,
                  const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  if (k == 0) return yy;
  Eigen::MatrixXd Gk(k, k);
  Eigen::VectorXd bk(k);
  for (int r = 0; r < k; ++r) {
    bk(r) = b(idx[static_cast<std::size_t>(r)]);
    for (int c = 0; c < k; ++c) {
      Gk(r, c) = G(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(Gk);
  if (llt.info() != Eigen::Success) {
    throw SingularDesign("ic_select: singular sub-model Gram matrix");
  }
  const Eigen::VectorXd beta = llt.solve(bk);
  return std::max(yy - bk.dot(beta), 0.0);
}

double ic_score(double rss, int k, double n, double penalty) {
  const double safe_rss = std::max(rss, 1e-300);
  return n * std::log(safe_rss / n) + penalty * k;
}

}  // namespace

BaselineChoice ic_select(const Dataset& data, Criterion criterion, SearchMode mode) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (n <= p + 1) throw TooFewRows("ic_select: need n > p + 1");

  const double penalty = criterion == Criterion::kAic
                             ? 2.0
                             : std::log(static_cast<double>(n));
  const Eigen::MatrixXd G = data.X.transpose() * data.X;
  const Eigen::VectorXd b = data.X.transpose() * data.y;
  const double yy = data.y.squaredNorm();

  if (mode == SearchMode::kAuto) {
    mode = p <= 20 ? SearchMode::kExhaustive : SearchMode::kStepwise;
  }

  BaselineChoice best;
  best.method = criterion == Criterion::kAic ? Method::kAic : Method::kBic;
  best.score = std::numeric_limits<double>::infinity();

  if (mode == SearchMode::kExhaustive) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(p));
    const std::uint64_t total = 1ull << p;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      idx.clear();
      for (int j = 0; j < p; ++j) {
        if (mask & (1ull << j)) idx.push_back(j);
      }
      const double score = ic_score(subset_rss(G, b, yy, idx),
                                    static_cast<int>(idx.size()),
                                    static_cast<double>(n), penalty);
      if (score < best.score) {
        best.score = score;
        best.selected.clear();
        for (int j : idx) best.selected.push_back(j + 1);
      }
    }
  } else {
    // Forward stepwise: grow greedily, keep the best model seen anywhere
    // along the path.
    std::vector<int> current;
    std::vector<bool> in(static_cast<std::size_t>(p), false);
    best.score = ic_score(yy, 0, static_cast<double>(n), penalty);
    double cur_score = best.score;
    for (Eigen::Index step = 0; step < p; ++step) {
      int arg = -1;
      double arg_score = std::numeric_limits<double>::infinity();
      for (int j = 0; j < p; ++j) {
        if (in[static_cast<std::size_t>(j)]) continue;
        std::vector<int> trial = current;
        trial.push_back(j);
        std::sort(trial.begin(), trial.end());
        const double s = ic_score(subset_rss(G, b, yy, trial),
                                  static_cast<int>(trial.size()),
                                  static_cast<double>(n), penalty);
        if (s < arg_score) {
          arg_score = s;
          arg = j;
        }
      }
      if (arg < 0) break;
      current.push_back(arg);
      std::sort(current.begin(), current.end());
      in[static_cast<std::size_t>(arg)] = true;
      cur_score = arg_score;
      if (cur_score < best.score) {
        best.score = cur_score;
        best.selected.clear();
        for (int j : current) best.selected.push_back(j + 1);
      }
    }
  }
  return best;
}

namespace {

double soft_threshold(double z, double g) {
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

// Cyclic coordinate descent on 0.5*||y - X b||^2 / n + lambda * sum w_j |b_j|.
// beta is both warm start and output. Residual r = y - X*beta is
// maintained by the caller across lambda steps.
void coordinate_descent(const Eigen::MatrixXd& X, Eigen::VectorXd& r,
                        Eigen::VectorXd& beta, const Eigen::VectorXd& col_msq,
                        const Eigen::VectorXd& w, double lambda) {
  const Eigen::Index p = X.cols();
  const double n = static_cast<double>(X.rows());
  constexpr double kTol = 1e-7;
  constexpr int kMaxSweeps = 10000;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_msq(j) <= 0.0) continue;
      const double old = beta(j);
      const double z = X.col(j).dot(r) / n + col_msq(j) * old;
      const double neu = soft_threshold(z, lambda * w(j)) / col_msq(j);
      if (neu != old) {
        r += X.col(j) * (old - neu);
        beta(j) = neu;
        max_delta = std::max(max_delta, std::fabs(neu - old));
      }
    }
    if (max_delta < kTol) break;
  }
}

std::vector<double> lambda_grid(double lambda_max) {
  constexpr int kPoints = 100;
  constexpr double kRatio = 1e-3;
  std::vector<double> grid(kPoints);
  for (int t = 0; t < kPoints; ++t) {
    grid[static_cast<std::size_t>(t)] =
        lambda_max * std::pow(kRatio, static_cast<double>(t) / (kPoints - 1));
  }
  return grid;
}

// Path of solutions over a descending lambda grid, warm started.
std::vector<Eigen::VectorXd> lasso_path(const Eigen::MatrixXd& X,
                                        const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& w,
                                        const std::vector<double>& grid) {
  const Eigen::Index p = X.cols();
  const double n = static_cast<double>(X.rows());
  Eigen::VectorXd col_msq(p);
  for (Eigen::Index j = 0; j < p; ++j) col_msq(j) = X.col(j).squaredNorm() / n;

  std::vector<Eigen::VectorXd> path;
  path.reserve(grid.size());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd r = y;
  for (double lambda : grid) {
    coordinate_descent(X, r, beta, col_msq, w, lambda);
    path.push_back(beta);
  }
  return path;
}

// Deterministic fold labels: shuffle 0..n-1 with a seed derived from
// (n, folds, seed), then deal round robin.
std::vector<int> fold_labels(Eigen::Index n, int folds, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 eng(derive_seed(seed, derive_seed(static_cast<std::uint64_t>(n),
                                                    static_cast<std::uint64_t>(folds))));
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(eng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<int> label(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < order.size(); ++k) {
    label[static_cast<std::size_t>(order[k])] = static_cast<int>(k % static_cast<std::size_t>(folds));
  }
  return label;
}

}  // namespace

Eigen::VectorXd lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double lambda) {
  const Eigen::Index p = X.cols();
  const double n = static_cast<double>(X.rows());
  Eigen::VectorXd col_msq(p);
  for (Eigen::Index j = 0; j < p; ++j) col_msq(j) = X.col(j).squaredNorm() / n;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd r = y;
  coordinate_descent(X, r, beta, col_msq, Eigen::VectorXd::Ones(p), lambda);
  return beta;
}

BaselineChoice lasso_cv_select(const Dataset& data, int folds, bool adaptive,
                               std::uint64_t seed) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (folds < 2 || folds > n) throw std::invalid_argument("lasso_cv_select: bad fold count");

  Eigen::VectorXd w = Eigen::VectorXd::Ones(p);
  if (adaptive) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.X);
    const Eigen::VectorXd rdiag =
        qr.matrixR().topLeftCorner(p, p).diagonal().cwiseAbs();
    if (n < p || rdiag.minCoeff() < 1e-10 * rdiag.maxCoeff()) {
      throw SingularDesign("lasso_cv_select: singular design for adaptive weights");
    }
    const Eigen::VectorXd ols = qr.solve(data.y);
    for (Eigen::Index j = 0; j < p; ++j) {
      w(j) = 1.0 / std::max(std::fabs(ols(j)), 1e-12);
    }
  }

  double lambda_max = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    lambda_max = std::max(
        lambda_max, std::fabs(data.X.col(j).dot(data.y)) /
                        (static_cast<double>(n) * w(j)));
  }
  if (lambda_max <= 0.0) lambda_max = 1.0;
  const std::vector<double> grid = lambda_grid(lambda_max);

  const std::vector<int> label = fold_labels(n, folds, seed);
  std::vector<double> cv_sse(grid.size(), 0.0);
  for (int k = 0; k < folds; ++k) {
    Eigen::Index n_val = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (label[static_cast<std::size_t>(i)] == k) ++n_val;
    }
    const Eigen::Index n_tr = n - n_val;
    Eigen::MatrixXd Xtr(n_tr, p), Xval(n_val, p);
    Eigen::VectorXd ytr(n_tr), yval(n_val);
    Eigen::Index it = 0, iv = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (label[static_cast<std::size_t>(i)] == k) {
        Xval.row(iv) = data.X.row(i);
        yval(iv++) = data.y(i);
      } else {
        Xtr.row(it) = data.X.row(i);
        ytr(it++) = data.y(i);
      }
    }
    const auto path = lasso_path(Xtr, ytr, w, grid);
    for (std::size_t t = 0; t < grid.size(); ++t) {
      cv_sse[t] += (yval - Xval * path[t]).squaredNorm();
    }
  }

  std::size_t best_t = 0;
  for (std::size_t t = 1; t < grid.size(); ++t) {
    if (cv_sse[t] < cv_sse[best_t]) best_t = t;
  }

  const auto full_path = lasso_path(data.X, data.y, w, grid);
  BaselineChoice choice;
  choice.method = adaptive ? Method::kAdaptiveLassoCv : Method::kLassoCv;
  choice.score = grid[best_t];
  for (Eigen::Index j = 0; j < p; ++j) {
    if (full_path[best_t](j) != 0.0) choice.selected.push_back(static_cast<int>(j) + 1);
  }
  return choice;
}

}  // namespace imsel
