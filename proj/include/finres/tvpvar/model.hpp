#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace finres::tvpvar {

/// Length of β_t: per equation an intercept plus k·lags lag coefficients.
inline int BetaSize(int k, int lags) { return k * (1 + k * lags); }
/// Free elements of the unit lower-triangular A_t.
inline int AlphaSize(int k) { return k * (k - 1) / 2; }

/// IG(shape, scale) on an innovation variance.
struct InverseGammaPrior {
  double shape;
  double scale;
};

struct PriorSet {
  Eigen::VectorXd mean_beta0;
  Eigen::MatrixXd cov_beta0;
  Eigen::VectorXd mean_alpha0;
  Eigen::MatrixXd cov_alpha0;
  Eigen::VectorXd mean_h0;
  Eigen::MatrixXd cov_h0;
  InverseGammaPrior beta_innovation{20.0, 1e-4};
  InverseGammaPrior alpha_innovation{2.0, 1e-4};
  InverseGammaPrior h_innovation{2.0, 1e-4};

  /// Zero means, 10·I covariances, the IG defaults above.
  static PriorSet Default(int k, int lags);
  /// Throws ValidationError for wrong sizes, non-PD covariances or
  /// nonpositive IG parameters.
  void Validate(int k, int lags) const;
};

struct McmcConfig {
  /// Total Gibbs iterations, burn-in included.
  int draws = 11000;
  int burn_in = 1000;
  std::uint64_t seed = 20240101;
  int thin = 1;
  /// Full parameter-path draws kept in the posterior (evenly spaced over
  /// the retained draws); 0 keeps all of them. Posterior means always use
  /// every retained draw.
  int stored_path_draws = 200;

  int RetainedDraws() const { return (draws - burn_in + thin - 1) / thin; }
  void Validate() const;
};

struct TvpVarSpec {
  int k = 1;
  int lags = 1;
  /// Number of observations T (rows of the panel).
  int sample_length = 0;
  PriorSet priors;
  McmcConfig mcmc;

  /// Default priors and MCMC settings for a k-variable model.
  static TvpVarSpec Make(int k, int lags, int sample_length);
  void Validate() const;
};

/// Time-varying parameters at the periods t = s+1..T (row r ↔ time s + r,
/// zero based).
///
/// β row layout, per equation i: [c_i, B_1(i,0..k-1), ..., B_s(i,0..k-1)].
/// α row layout: a_21, a_31, a_32, a_41, ... (row-wise below the diagonal).
struct ParameterPaths {
  int k = 1;
  int lags = 1;
  Eigen::MatrixXd beta;
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd h;

  static ParameterPaths Zero(int k, int lags, int periods);
  /// Every period set to the same parameters.
  static ParameterPaths Constant(int k, int lags, int periods, const Eigen::VectorXd& beta,
                                 const Eigen::VectorXd& alpha, const Eigen::VectorXd& h);

  int periods() const { return static_cast<int>(beta.rows()); }
  Eigen::VectorXd Intercept(int t) const;
  /// B_lag at period t, lag in 1..lags.
  Eigen::MatrixXd LagMatrix(int t, int lag) const;
  std::vector<Eigen::MatrixXd> LagMatrices(int t) const;
  /// Unit lower-triangular A_t.
  Eigen::MatrixXd Contemporaneous(int t) const;
  /// σ_t = exp(h_t / 2).
  Eigen::VectorXd Volatility(int t) const;
  /// Ω_t = A_t⁻¹ Σ_t Σ_t A_t⁻ᵀ.
  Eigen::MatrixXd Covariance(int t) const;
  /// A_t⁻¹ diag(scale): column j is the impact of a unit structural shock j.
  Eigen::MatrixXd Impact(int t, const Eigen::VectorXd& scale) const;
};

/// Index of a_{row,col} (row > col, zero based) in α.
inline int AlphaIndex(int row, int col) { return row * (row - 1) / 2 + col; }

}  // namespace finres::tvpvar
