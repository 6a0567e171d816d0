#include "finres/linalg.hpp"

#include "finres/error.hpp"

namespace finres::linalg {

Eigen::MatrixXd RobustCholesky(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = Symmetrize(m);
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().allFinite()) {
    return llt.matrixL();
  }
  const auto n = sym.rows();
  for (double jitter = 1e-10; jitter <= 1e-6 * 1.0001; jitter *= 10.0) {
    llt.compute(sym + jitter * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw NumericalError("covariance matrix is not positive definite (jitter up to 1e-6 failed)");
}

bool IsPositiveDefinite(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(Symmetrize(m));
  return llt.info() == Eigen::Success;
}

Eigen::VectorXd SampleGaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, Rng& rng) {
  const Eigen::MatrixXd chol = RobustCholesky(cov);
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.Normal();
  return mean + chol * z;
}

LeastSquaresSolution SolveLeastSquares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) throw ValidationError("design rows do not match response length");
  if (x.rows() < x.cols()) throw ValidationError("fewer observations than regressors");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < x.cols()) throw NumericalError("design matrix is rank deficient");

  LeastSquaresSolution out;
  out.coefficients = qr.solve(y);
  out.residuals = y - x * out.coefficients;
  out.ssr = out.residuals.squaredNorm();

  // (XᵀX)⁻¹ = P R⁻¹ R⁻ᵀ Pᵀ
  const auto p = x.cols();
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd unpivoted = r_inv * r_inv.transpose();
  out.xtx_inverse = qr.colsPermutation() * unpivoted * qr.colsPermutation().transpose();
  return out;
}

}  // namespace finres::linalg
