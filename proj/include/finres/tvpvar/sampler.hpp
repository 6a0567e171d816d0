#pragma once

#include <string>
#include <vector>

#include "finres/data/panel.hpp"
#include "finres/tvpvar/diagnostics.hpp"
#include "finres/tvpvar/model.hpp"

namespace finres::tvpvar {

struct TvpVarPosterior {
  TvpVarSpec spec;
  std::vector<std::string> variables;
  /// Dates of the estimation periods t = s+1..T.
  std::vector<data::Month> dates;
  /// Posterior means over every retained draw.
  ParameterPaths mean_paths;
  /// Evenly spaced subset of retained path draws (see McmcConfig).
  std::vector<ParameterPaths> path_draws;
  /// Retained draws × innovation standard deviations, i.e. square roots of
  /// [diag Σ_β, diag Σ_α, diag Σ_h].
  Eigen::MatrixXd innovation_draws;
  std::vector<std::string> innovation_labels;
  /// One row per innovation standard deviation, in the column order above.
  std::vector<DiagnosticsRow> summary;
};

/// Labels sigma_beta_1.., sigma_alpha_1.., sigma_h_1...
std::vector<std::string> InnovationLabels(int k, int lags);

/// Gibbs sampler for the TVP-VAR with stochastic volatility. Each sweep
/// draws the β path and the α path by forward-filtering backward-sampling,
/// the log-volatility path through the 10-component normal mixture for
/// log χ²₁, then the diagonal innovation variances from their inverse-gamma
/// conditionals. Deterministic in (panel, spec).
TvpVarPosterior EstimateMcmc(const data::TimeSeriesPanel& panel, const TvpVarSpec& spec);

/// Table rows for the innovation-variance chains of a posterior.
std::vector<DiagnosticsRow> PosteriorSummary(const TvpVarPosterior& posterior);

/// Components of the log χ²₁ mixture: weights, means, variances.
struct MixtureComponent {
  double weight;
  double mean;
  double variance;
};
const std::vector<MixtureComponent>& LogChiSquareMixture();

}  // namespace finres::tvpvar
