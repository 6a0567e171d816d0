#pragma once

#include <Eigen/Dense>

#include "finres/rng.hpp"

namespace finres::linalg {

inline Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

/// Lower Cholesky factor of (M + Mᵀ)/2. On failure retries with jitter
/// 1e-10·I, growing ×10 up to 1e-6·I; throws NumericalError after that.
Eigen::MatrixXd RobustCholesky(const Eigen::MatrixXd& m);

/// Returns true when the symmetric part of m admits a Cholesky factor.
bool IsPositiveDefinite(const Eigen::MatrixXd& m);

/// One draw from N(mean, cov).
Eigen::VectorXd SampleGaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov, Rng& rng);

struct LeastSquaresSolution {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  /// (XᵀX)⁻¹, used for standard errors.
  Eigen::MatrixXd xtx_inverse;
  double ssr = 0.0;
};

/// Least squares by column-pivoted QR. Throws NumericalError when the design
/// is rank deficient.
LeastSquaresSolution SolveLeastSquares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

}  // namespace finres::linalg
