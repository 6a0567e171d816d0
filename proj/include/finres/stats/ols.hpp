#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace finres::stats {

struct OlsFit {
  /// Intercept first, then one entry per regressor column.
  std::vector<double> coefficients;
  std::vector<double> t_values;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  std::vector<double> residuals;
};

/// y = b0 + X b + e by least squares. t-values use s² = SSR / (n − p).
/// R² is measured against the intercept-only model (0 when y is constant).
OlsFit Ols(std::span<const double> y, const Eigen::MatrixXd& regressors);

}  // namespace finres::stats
