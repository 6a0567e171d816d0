#include "finres/stats/pca.hpp"

#include <algorithm>
#include <cmath>

#include "finres/error.hpp"

namespace finres::stats {

PcaComposite PrincipalComposite(const data::TimeSeriesPanel& panel, bool standardize_inputs) {
  const Eigen::Index t_len = panel.rows();
  const Eigen::Index k = panel.cols();
  if (t_len <= k) throw ValidationError("pca: need more dates than columns");
  if (!panel.values().allFinite()) throw ValidationError("pca: non-finite values");

  Eigen::MatrixXd x = panel.values().rowwise() - panel.values().colwise().mean();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double sd = std::sqrt(x.col(j).squaredNorm() / static_cast<double>(t_len - 1));
    if (!(sd > 0.0)) throw DomainError("pca: column '" + panel.columns()[j] + "' has zero variance");
    if (standardize_inputs) x.col(j) /= sd;
  }
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(t_len - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericalError("pca: eigen-decomposition failed");
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();  // ascending
  const double top = eigenvalues[k - 1];
  Eigen::Index leading = k - 1;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (top - eigenvalues[i] <= 1e-12 * std::abs(top)) {
      leading = i;
      break;
    }
  }
  Eigen::VectorXd loading = solver.eigenvectors().col(leading).normalized();
  double sum = loading.sum();
  if (sum == 0.0) {
    for (Eigen::Index i = 0; i < k; ++i) {
      if (loading[i] != 0.0) {
        sum = loading[i];
        break;
      }
    }
  }
  if (sum < 0.0) loading = -loading;

  const Eigen::VectorXd scores = x * loading;
  PcaComposite out;
  out.scores.assign(scores.data(), scores.data() + scores.size());
  out.loadings.assign(loading.data(), loading.data() + loading.size());
  out.explained_fraction = std::clamp(top / cov.trace(), 0.0, 1.0);
  return out;
}

}  // namespace finres::stats
