#include "finres/tvpvar/simulate.hpp"

#include <cmath>

#include "finres/error.hpp"
#include "finres/rng.hpp"

namespace finres::tvpvar {

namespace {

Eigen::VectorXd CheckedVariances(const Eigen::VectorXd& v, int size, const char* name) {
  if (v.size() == 0) return Eigen::VectorXd::Zero(size);
  if (v.size() != size) throw ValidationError(std::string(name) + " innovation variances have wrong size");
  if (!v.allFinite() || (v.array() < 0.0).any()) {
    throw ValidationError(std::string(name) + " innovation covariance is not positive semidefinite");
  }
  return v;
}

void RandomWalk(Eigen::MatrixXd& path, const Eigen::VectorXd& variance, Rng& rng) {
  const Eigen::VectorXd sd = variance.cwiseSqrt();
  for (Eigen::Index t = 1; t < path.rows(); ++t) {
    for (Eigen::Index i = 0; i < path.cols(); ++i) {
      path(t, i) = path(t - 1, i) + (sd[i] > 0.0 ? sd[i] * rng.Normal() : 0.0);
    }
  }
}

}  // namespace

SimulatedData SimulateDgp(const TvpVarSpec& spec, const DgpTruth& truth, std::uint64_t seed) {
  const int k = spec.k;
  const int s = spec.lags;
  const int t_len = spec.sample_length;
  if (k < 1 || s < 1 || t_len <= s) throw ValidationError("simulate: invalid dimensions");
  const int periods = t_len - s;
  const auto& p = truth.paths;
  if (p.k != k || p.lags != s) throw ValidationError("simulate: truth dimensions do not match spec");
  if (p.beta.cols() != BetaSize(k, s) || p.alpha.cols() != AlphaSize(k) || p.h.cols() != k ||
      p.alpha.rows() != p.beta.rows() || p.h.rows() != p.beta.rows()) {
    throw ValidationError("simulate: truth parameter blocks have wrong dimensions");
  }
  if (p.periods() != 1 && p.periods() != periods) {
    throw ValidationError("simulate: truth must have 1 or " + std::to_string(periods) + " periods");
  }

  Rng rng(seed, 0x5eed);
  ParameterPaths paths = p;
  if (p.periods() == 1) {
    const auto beta_var = CheckedVariances(truth.beta_innovation_var, BetaSize(k, s), "beta");
    const auto alpha_var = CheckedVariances(truth.alpha_innovation_var, AlphaSize(k), "alpha");
    const auto h_var = CheckedVariances(truth.h_innovation_var, k, "h");
    paths.beta = p.beta.replicate(periods, 1);
    paths.alpha = p.alpha.replicate(periods, 1);
    paths.h = p.h.replicate(periods, 1);
    RandomWalk(paths.beta, beta_var, rng);
    RandomWalk(paths.alpha, alpha_var, rng);
    RandomWalk(paths.h, h_var, rng);
  }

  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(t_len, k);
  if (truth.presample.size() != 0) {
    if (truth.presample.rows() != s || truth.presample.cols() != k) {
      throw ValidationError("simulate: presample must be lags × k");
    }
    y.topRows(s) = truth.presample;
  }
  Eigen::VectorXd eps(k);
  for (int r = 0; r < periods; ++r) {
    const int t = s + r;
    Eigen::VectorXd mean = paths.Intercept(r);
    for (int l = 1; l <= s; ++l) mean += paths.LagMatrix(r, l) * y.row(t - l).transpose();
    for (int i = 0; i < k; ++i) eps[i] = rng.Normal();
    y.row(t) = (mean + paths.Impact(r, paths.Volatility(r)) * eps).transpose();
  }
  if (!y.allFinite()) throw NumericalError("simulate: generated data diverged (non-finite values)");

  std::vector<std::string> names = truth.names;
  if (names.empty()) {
    for (int i = 0; i < k; ++i) names.push_back("y" + std::to_string(i + 1));
  }
  if (static_cast<int>(names.size()) != k) throw ValidationError("simulate: need one name per variable");
  return {data::TimeSeriesPanel(data::MonthRange(truth.first_date, static_cast<std::size_t>(t_len)),
                                std::move(names), std::move(y)),
          std::move(paths)};
}

}  // namespace finres::tvpvar
