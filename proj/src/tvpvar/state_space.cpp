#include "finres/tvpvar/state_space.hpp"

#include "finres/error.hpp"
#include "finres/linalg.hpp"

namespace finres::tvpvar {

Eigen::MatrixXd SampleRandomWalkStates(const RandomWalkStateModel& model, Rng& rng) {
  const auto n = model.observations.size();
  const Eigen::Index q = model.initial_mean.size();
  if (n == 0) throw ValidationError("state sampler: no observations");
  if (model.designs.size() != n || model.observation_covs.size() != n) {
    throw ValidationError("state sampler: inconsistent period counts");
  }
  const Eigen::MatrixXd state_cov = model.state_variances.asDiagonal();

  std::vector<Eigen::VectorXd> filtered_mean(n);
  std::vector<Eigen::MatrixXd> filtered_cov(n);
  Eigen::VectorXd a = model.initial_mean;
  Eigen::MatrixXd p = model.initial_cov;
  for (std::size_t t = 0; t < n; ++t) {
    const Eigen::MatrixXd& z = model.designs[t];
    const Eigen::MatrixXd pz = p * z.transpose();
    const Eigen::MatrixXd f = linalg::Symmetrize(z * pz + model.observation_covs[t]);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(f);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().array() > 0.0).all()) {
      throw NumericalError("prediction-error covariance is not positive definite");
    }
    const Eigen::MatrixXd gain = ldlt.solve(pz.transpose()).transpose();
    a += gain * (model.observations[t] - z * a);
    p = linalg::Symmetrize(p - gain * pz.transpose());
    filtered_mean[t] = a;
    filtered_cov[t] = p;
    p += state_cov;
  }

  Eigen::MatrixXd path(static_cast<Eigen::Index>(n), q);
  Eigen::VectorXd z(q);
  const auto draw = [&](const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
    const Eigen::MatrixXd chol = linalg::RobustCholesky(cov);
    for (Eigen::Index i = 0; i < q; ++i) z[i] = rng.Normal();
    return Eigen::VectorXd(mean + chol * z);
  };
  Eigen::VectorXd next = draw(filtered_mean[n - 1], filtered_cov[n - 1]);
  path.row(static_cast<Eigen::Index>(n - 1)) = next.transpose();
  for (std::size_t s = n - 1; s-- > 0;) {
    const Eigen::MatrixXd& pf = filtered_cov[s];
    const Eigen::MatrixXd predicted = linalg::Symmetrize(pf + state_cov);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(predicted);
    if (ldlt.info() != Eigen::Success) throw NumericalError("smoother covariance is singular");
    // G = P_f (P_f + Q)⁻¹; mean = a_f + G (x_{t+1} − a_f); cov = G Q.
    const Eigen::MatrixXd gain = ldlt.solve(pf).transpose();
    const Eigen::VectorXd mean = filtered_mean[s] + gain * (next - filtered_mean[s]);
    const Eigen::MatrixXd cov = linalg::Symmetrize(gain * state_cov);
    next = draw(mean, cov);
    path.row(static_cast<Eigen::Index>(s)) = next.transpose();
  }
  return path;
}

}  // namespace finres::tvpvar
