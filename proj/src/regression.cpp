#include "imsel/regression.hpp"

#include <Eigen/QR>
#include <cmath>

#include "imsel/errors.hpp"

namespace imsel {

ThetaFit fit(const Dataset& data) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (p < 1) throw SingularDesign("fit: no predictor columns");
  if (n <= p + 1) {
    throw TooFewRows("fit: need n > p + 1, got n=" + std::to_string(n) +
                     ", p=" + std::to_string(p));
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.X);
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::VectorXd rdiag = R.diagonal().cwiseAbs();
  if (rdiag.minCoeff() < 1e-10 * rdiag.maxCoeff()) {
    throw SingularDesign("fit: design matrix is numerically rank deficient");
  }

  ThetaFit f;
  f.names = data.names;
  f.beta_hat = qr.solve(data.y);

  const Eigen::VectorXd resid = data.y - data.X * f.beta_hat;
  const double rss = resid.squaredNorm();
  if (std::sqrt(rss) <= 1e-12 * data.y.norm()) {
    throw DegenerateResidual("fit: residual scale is zero (exact fit)");
  }
  f.sigma_hat = std::sqrt(rss / static_cast<double>(n - p));
  f.nu = static_cast<int>(n - p - 1);

  // M = (X^T X)^{-1} from the R factor: X P = Q R  =>  M = P R^{-1} R^{-T} P^T.
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd M = Rinv * Rinv.transpose();
  M = qr.colsPermutation() * M * qr.colsPermutation().transpose();
  f.M = 0.5 * (M + M.transpose());

  f.D = f.M.diagonal();
  const Eigen::VectorXd dinv_sqrt = f.D.cwiseSqrt().cwiseInverse();
  f.L = dinv_sqrt.asDiagonal() * f.M * dinv_sqrt.asDiagonal();
  f.L = 0.5 * (f.L + f.L.transpose()).eval();
  f.theta_hat = dinv_sqrt.cwiseProduct(f.beta_hat);
  f.T = f.theta_hat / f.sigma_hat;
  return f;
}

}  // namespace imsel
