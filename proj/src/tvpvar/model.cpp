#include "finres/tvpvar/model.hpp"

#include <cmath>
#include <string>

#include "finres/error.hpp"
#include "finres/linalg.hpp"

namespace finres::tvpvar {

namespace {

void CheckBlock(const char* name, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                int size) {
  if (mean.size() != size || cov.rows() != size || cov.cols() != size) {
    throw ValidationError(std::string("prior ") + name + " has wrong dimension (expected " +
                          std::to_string(size) + ")");
  }
  if (size > 0) {
    if (!cov.isApprox(cov.transpose(), 1e-12) || !linalg::IsPositiveDefinite(cov)) {
      throw ValidationError(std::string("prior ") + name + " covariance is not symmetric positive definite");
    }
  }
}

void CheckInverseGamma(const char* name, const InverseGammaPrior& prior) {
  if (!(prior.shape > 0.0) || !(prior.scale > 0.0)) {
    throw ValidationError(std::string(name) + " inverse-gamma shape and scale must be positive");
  }
}

}  // namespace

PriorSet PriorSet::Default(int k, int lags) {
  const int nb = BetaSize(k, lags);
  const int na = AlphaSize(k);
  PriorSet p;
  p.mean_beta0 = Eigen::VectorXd::Zero(nb);
  p.cov_beta0 = 10.0 * Eigen::MatrixXd::Identity(nb, nb);
  p.mean_alpha0 = Eigen::VectorXd::Zero(na);
  p.cov_alpha0 = 10.0 * Eigen::MatrixXd::Identity(na, na);
  p.mean_h0 = Eigen::VectorXd::Zero(k);
  p.cov_h0 = 10.0 * Eigen::MatrixXd::Identity(k, k);
  return p;
}

void PriorSet::Validate(int k, int lags) const {
  CheckBlock("beta0", mean_beta0, cov_beta0, BetaSize(k, lags));
  CheckBlock("alpha0", mean_alpha0, cov_alpha0, AlphaSize(k));
  CheckBlock("h0", mean_h0, cov_h0, k);
  CheckInverseGamma("beta innovation", beta_innovation);
  CheckInverseGamma("alpha innovation", alpha_innovation);
  CheckInverseGamma("h innovation", h_innovation);
}

void McmcConfig::Validate() const {
  if (draws < 1) throw ValidationError("draws must be positive");
  if (burn_in < 0) throw ValidationError("burn-in must be nonnegative");
  if (draws <= burn_in) throw ValidationError("draws must exceed burn-in");
  if (thin < 1) throw ValidationError("thin must be positive");
  if (stored_path_draws < 0) throw ValidationError("stored path draws must be nonnegative");
}

TvpVarSpec TvpVarSpec::Make(int k, int lags, int sample_length) {
  TvpVarSpec spec;
  spec.k = k;
  spec.lags = lags;
  spec.sample_length = sample_length;
  spec.priors = PriorSet::Default(k, lags);
  return spec;
}

void TvpVarSpec::Validate() const {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (lags < 1) throw ValidationError("lag order must be at least 1");
  if (sample_length <= lags + 10) {
    throw ValidationError("sample length " + std::to_string(sample_length) +
                          " too short for lag order " + std::to_string(lags) + " (need > lags + 10)");
  }
  priors.Validate(k, lags);
  mcmc.Validate();
}

ParameterPaths ParameterPaths::Zero(int k, int lags, int periods) {
  ParameterPaths p;
  p.k = k;
  p.lags = lags;
  p.beta = Eigen::MatrixXd::Zero(periods, BetaSize(k, lags));
  p.alpha = Eigen::MatrixXd::Zero(periods, AlphaSize(k));
  p.h = Eigen::MatrixXd::Zero(periods, k);
  return p;
}

ParameterPaths ParameterPaths::Constant(int k, int lags, int periods, const Eigen::VectorXd& beta,
                                        const Eigen::VectorXd& alpha, const Eigen::VectorXd& h) {
  if (beta.size() != BetaSize(k, lags) || alpha.size() != AlphaSize(k) || h.size() != k) {
    throw ValidationError("constant parameter vectors have wrong dimensions");
  }
  ParameterPaths p;
  p.k = k;
  p.lags = lags;
  p.beta = beta.transpose().replicate(periods, 1);
  p.alpha = alpha.transpose().replicate(periods, 1);
  p.h = h.transpose().replicate(periods, 1);
  return p;
}

Eigen::VectorXd ParameterPaths::Intercept(int t) const {
  const int m = 1 + k * lags;
  Eigen::VectorXd c(k);
  for (int i = 0; i < k; ++i) c[i] = beta(t, i * m);
  return c;
}

Eigen::MatrixXd ParameterPaths::LagMatrix(int t, int lag) const {
  const int m = 1 + k * lags;
  Eigen::MatrixXd b(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) b(i, j) = beta(t, i * m + 1 + (lag - 1) * k + j);
  }
  return b;
}

std::vector<Eigen::MatrixXd> ParameterPaths::LagMatrices(int t) const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(lags));
  for (int l = 1; l <= lags; ++l) out.push_back(LagMatrix(t, l));
  return out;
}

Eigen::MatrixXd ParameterPaths::Contemporaneous(int t) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
  for (int i = 1; i < k; ++i) {
    for (int j = 0; j < i; ++j) a(i, j) = alpha(t, AlphaIndex(i, j));
  }
  return a;
}

Eigen::VectorXd ParameterPaths::Volatility(int t) const {
  return (0.5 * h.row(t).transpose().array()).exp().matrix();
}

Eigen::MatrixXd ParameterPaths::Impact(int t, const Eigen::VectorXd& scale) const {
  const Eigen::MatrixXd a = Contemporaneous(t);
  Eigen::MatrixXd inv = a.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(k, k));
  return inv * scale.asDiagonal();
}

Eigen::MatrixXd ParameterPaths::Covariance(int t) const {
  const Eigen::MatrixXd impact = Impact(t, Volatility(t));
  return linalg::Symmetrize(impact * impact.transpose());
}

}  // namespace finres::tvpvar
