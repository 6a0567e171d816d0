#include "finres/stats/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finres/error.hpp"
#include "finres/linalg.hpp"

namespace finres::stats {

OlsFit Ols(std::span<const double> y, const Eigen::MatrixXd& regressors) {
  const auto n = static_cast<Eigen::Index>(y.size());
  if (regressors.rows() != n) {
    throw ValidationError("ols: " + std::to_string(regressors.rows()) + " regressor rows for " +
                          std::to_string(n) + " observations");
  }
  const Eigen::Index p = regressors.cols() + 1;
  if (n <= p) throw ValidationError("ols: need more observations than coefficients");

  Eigen::MatrixXd x(n, p);
  x.col(0).setOnes();
  x.rightCols(p - 1) = regressors;
  const Eigen::Map<const Eigen::VectorXd> target(y.data(), n);
  const auto solution = linalg::SolveLeastSquares(x, target);

  OlsFit fit;
  fit.coefficients.assign(solution.coefficients.data(), solution.coefficients.data() + p);
  fit.residuals.assign(solution.residuals.data(), solution.residuals.data() + n);
  const double s2 = solution.ssr / static_cast<double>(n - p);
  fit.t_values.resize(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    const double se = std::sqrt(s2 * solution.xtx_inverse(j, j));
    const double b = solution.coefficients[j];
    if (se > 0.0) {
      fit.t_values[j] = b / se;
    } else {
      fit.t_values[j] = b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b);
    }
  }
  const double tss = (target.array() - target.mean()).square().sum();
  // Treat a residual sum within rounding of the total as "no signal".
  if (tss > 0.0 && tss > 1e-24 * target.squaredNorm()) {
    fit.r_squared = std::clamp(1.0 - solution.ssr / tss, 0.0, 1.0);
  }
  fit.adj_r_squared =
      1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) / static_cast<double>(n - p);
  return fit;
}

}  // namespace finres::stats
