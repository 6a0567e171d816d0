#include "finres/tvpvar/sampler.hpp"

#include <cmath>

#include "finres/error.hpp"
#include "finres/linalg.hpp"
#include "finres/rng.hpp"
#include "finres/tvpvar/state_space.hpp"

namespace finres::tvpvar {

const std::vector<MixtureComponent>& LogChiSquareMixture() {
  // Omori, Chib, Shephard & Nakajima (2007), ten-component approximation
  // of the log χ²₁ density.
  static const std::vector<MixtureComponent> kMixture = {
      {0.00609, 1.92677, 0.11265},   {0.04775, 1.34744, 0.17788},
      {0.13057, 0.73504, 0.26768},   {0.20674, 0.02266, 0.40611},
      {0.22715, -0.85173, 0.62699},  {0.18842, -1.97278, 0.98583},
      {0.12047, -3.46788, 1.57469},  {0.05591, -5.55246, 2.54498},
      {0.01575, -8.68384, 4.16591},  {0.00115, -14.65000, 7.33342},
  };
  return kMixture;
}

std::vector<std::string> InnovationLabels(int k, int lags) {
  std::vector<std::string> labels;
  for (int i = 1; i <= BetaSize(k, lags); ++i) labels.push_back("sigma_beta_" + std::to_string(i));
  for (int i = 1; i <= AlphaSize(k); ++i) labels.push_back("sigma_alpha_" + std::to_string(i));
  for (int i = 1; i <= k; ++i) labels.push_back("sigma_h_" + std::to_string(i));
  return labels;
}

std::vector<DiagnosticsRow> PosteriorSummary(const TvpVarPosterior& posterior) {
  if (posterior.innovation_draws.rows() == 0) throw ValidationError("posterior has no draws");
  std::vector<DiagnosticsRow> rows;
  rows.reserve(static_cast<std::size_t>(posterior.innovation_draws.cols()));
  for (Eigen::Index j = 0; j < posterior.innovation_draws.cols(); ++j) {
    const Eigen::VectorXd chain = posterior.innovation_draws.col(j);
    rows.push_back(SummarizeChain(posterior.innovation_labels[static_cast<std::size_t>(j)],
                                  std::span<const double>(chain.data(), static_cast<std::size_t>(chain.size()))));
  }
  return rows;
}

namespace {

double PriorMean(const InverseGammaPrior& prior) {
  return prior.shape > 1.0 ? prior.scale / (prior.shape - 1.0) : prior.scale;
}

Eigen::VectorXd DrawInnovationVariances(const Eigen::MatrixXd& path, const InverseGammaPrior& prior,
                                        Rng& rng) {
  const Eigen::Index n = path.rows();
  Eigen::VectorXd out(path.cols());
  for (Eigen::Index i = 0; i < path.cols(); ++i) {
    double ss = 0.0;
    for (Eigen::Index t = 1; t < n; ++t) {
      const double d = path(t, i) - path(t - 1, i);
      ss += d * d;
    }
    out[i] = rng.InverseGamma(prior.shape + 0.5 * static_cast<double>(n - 1), prior.scale + 0.5 * ss);
  }
  return out;
}

double LogInverseGammaOfRoot(double omega, const InverseGammaPrior& prior) {
  const double v = omega * omega;
  return -(prior.shape + 1.0) * std::log(v) - prior.scale / v + std::log(std::abs(omega));
}

// Interweaving step for state j of a random-walk block whose observation
// covariances are diagonal: write the path as x_t = x_1 + ω·x̃_t and redraw
// (x_1, ω) given x̃, the other states and the data. The Gaussian regression
// posterior under a flat prior on ω is the proposal; the IG prior on ω²
// enters the MH ratio.
void Interweave(Eigen::MatrixXd& states, double& variance, const RandomWalkStateModel& model, Eigen::Index j,
                const InverseGammaPrior& prior, Rng& rng) {
  const double omega = std::sqrt(variance);
  if (!(omega > 0.0)) return;
  const Eigen::Index n = states.rows();
  const double x1 = states(0, j);
  const Eigen::VectorXd tilde = (states.col(j).array() - x1) / omega;
  const double prior_var = model.initial_cov(j, j);
  Eigen::Matrix2d precision = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  precision(0, 0) = 1.0 / prior_var;
  rhs[0] = model.initial_mean[j] / prior_var;
  for (Eigen::Index t = 0; t < n; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    const Eigen::MatrixXd& z = model.designs[idx];
    const Eigen::VectorXd partial =
        model.observations[idx] - z * states.row(t).transpose() + z.col(j) * states(t, j);
    for (Eigen::Index m = 0; m < z.rows(); ++m) {
      if (z(m, j) == 0.0) continue;
      const double w = 1.0 / model.observation_covs[idx](m, m);
      const Eigen::Vector2d x(z(m, j), z(m, j) * tilde[t]);
      precision += w * x * x.transpose();
      rhs += w * partial[m] * x;
    }
  }
  Eigen::LLT<Eigen::Matrix2d> llt(precision);
  if (llt.info() != Eigen::Success) return;
  const Eigen::Vector2d mean = llt.solve(rhs);
  const Eigen::Vector2d draw(rng.Normal(), rng.Normal());
  const Eigen::Vector2d proposal = mean + llt.matrixU().solve(draw);
  if (!(proposal[1] != 0.0)) return;
  const double log_ratio = LogInverseGammaOfRoot(proposal[1], prior) - LogInverseGammaOfRoot(omega, prior);
  if (std::log(rng.Uniform()) >= log_ratio) return;
  states.col(j) = (proposal[0] + proposal[1] * tilde.array()).matrix();
  variance = proposal[1] * proposal[1];
}

bool SeparablePrior(const Eigen::MatrixXd& cov) { return cov.isDiagonal(0.0); }

// Starting values from a constant-coefficient VAR fitted by least squares.
void InitializeFromOls(const std::vector<Eigen::VectorXd>& regressors,
                       const std::vector<Eigen::VectorXd>& targets, ParameterPaths& current) {
  const int k = current.k;
  const auto n = static_cast<Eigen::Index>(regressors.size());
  const Eigen::Index m = regressors.front().size();
  Eigen::MatrixXd x(n, m), y(n, k);
  for (Eigen::Index r = 0; r < n; ++r) {
    x.row(r) = regressors[static_cast<std::size_t>(r)].transpose();
    y.row(r) = targets[static_cast<std::size_t>(r)].transpose();
  }
  Eigen::MatrixXd residuals = y;
  if (n > m + 1) {
    try {
      Eigen::VectorXd beta(k * m);
      for (int i = 0; i < k; ++i) {
        const auto fit = linalg::SolveLeastSquares(x, y.col(i));
        beta.segment(i * m, m) = fit.coefficients;
        residuals.col(i) = fit.residuals;
      }
      current.beta.rowwise() = beta.transpose();
    } catch (const NumericalError&) {
      residuals = y.rowwise() - y.colwise().mean();
    }
  }
  const Eigen::MatrixXd cov = residuals.transpose() * residuals / static_cast<double>(n);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) {
    const Eigen::MatrixXd l = llt.matrixL();
    const Eigen::VectorXd d = l.diagonal();
    const Eigen::MatrixXd unit = l * d.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd a = unit.triangularView<Eigen::UnitLower>().solve(Eigen::MatrixXd::Identity(k, k));
    for (int i = 1; i < k; ++i) {
      for (int j = 0; j < i; ++j) current.alpha.col(AlphaIndex(i, j)).setConstant(a(i, j));
    }
    for (int i = 0; i < k; ++i) current.h.col(i).setConstant(2.0 * std::log(d[i]));
  } else {
    for (int i = 0; i < k; ++i) {
      current.h.col(i).setConstant(std::log(std::max(cov(i, i), 1e-12)));
    }
  }
}

}  // namespace

TvpVarPosterior EstimateMcmc(const data::TimeSeriesPanel& panel, const TvpVarSpec& spec_in) {
  TvpVarSpec spec = spec_in;
  const int t_len = static_cast<int>(panel.rows());
  if (spec.sample_length == 0) spec.sample_length = t_len;
  if (spec.sample_length != t_len) {
    throw ValidationError("spec sample length " + std::to_string(spec.sample_length) +
                          " does not match panel length " + std::to_string(t_len));
  }
  if (panel.cols() != spec.k) {
    throw ValidationError("panel has " + std::to_string(panel.cols()) + " columns, spec expects k = " +
                          std::to_string(spec.k));
  }
  spec.Validate();

  const int k = spec.k;
  const int s = spec.lags;
  const int n = t_len - s;
  const int m = 1 + k * s;
  const int nb = BetaSize(k, s);
  const int na = AlphaSize(k);
  const PriorSet& priors = spec.priors;
  const McmcConfig& mcmc = spec.mcmc;
  const Eigen::MatrixXd& data = panel.values();

  std::vector<Eigen::VectorXd> regressors(static_cast<std::size_t>(n));
  std::vector<Eigen::VectorXd> targets(static_cast<std::size_t>(n));
  std::vector<Eigen::MatrixXd> beta_designs(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    Eigen::VectorXd x(m);
    x[0] = 1.0;
    for (int l = 1; l <= s; ++l) x.segment(1 + (l - 1) * k, k) = data.row(s + r - l).transpose();
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(k, nb);
    for (int i = 0; i < k; ++i) z.block(i, i * m, 1, m) = x.transpose();
    regressors[static_cast<std::size_t>(r)] = std::move(x);
    targets[static_cast<std::size_t>(r)] = data.row(s + r).transpose();
    beta_designs[static_cast<std::size_t>(r)] = std::move(z);
  }

  ParameterPaths current = ParameterPaths::Zero(k, s, n);
  InitializeFromOls(regressors, targets, current);
  Eigen::VectorXd sigma_beta = Eigen::VectorXd::Constant(nb, PriorMean(priors.beta_innovation));
  Eigen::VectorXd sigma_alpha = Eigen::VectorXd::Constant(na, PriorMean(priors.alpha_innovation));
  Eigen::VectorXd sigma_h = Eigen::VectorXd::Constant(k, std::max(PriorMean(priors.h_innovation), 0.01));

  RandomWalkStateModel beta_model{targets, beta_designs, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(n)),
                                  sigma_beta, priors.mean_beta0, priors.cov_beta0};
  RandomWalkStateModel alpha_model;
  if (na > 0) {
    alpha_model.observations.resize(static_cast<std::size_t>(n));
    alpha_model.designs.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(k - 1, na));
    alpha_model.observation_covs.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(k - 1, k - 1));
    alpha_model.initial_mean = priors.mean_alpha0;
    alpha_model.initial_cov = priors.cov_alpha0;
  }
  RandomWalkStateModel h_model;
  h_model.observations.resize(static_cast<std::size_t>(n));
  h_model.designs.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Identity(k, k));
  h_model.observation_covs.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(k, k));
  h_model.initial_mean = priors.mean_h0;
  h_model.initial_cov = priors.cov_h0;

  const bool interweave_h = SeparablePrior(priors.cov_h0);
  const bool interweave_alpha = na > 0 && SeparablePrior(priors.cov_alpha0);
  const auto& mixture = LogChiSquareMixture();
  std::vector<double> mixture_density(mixture.size());
  Eigen::MatrixXd residuals(n, k);
  Eigen::MatrixXd structural(n, k);

  const int retained = mcmc.RetainedDraws();
  const int stride = mcmc.stored_path_draws == 0
                         ? 1
                         : std::max(1, (retained + mcmc.stored_path_draws - 1) / mcmc.stored_path_draws);

  TvpVarPosterior posterior;
  posterior.spec = spec;
  posterior.variables = panel.columns();
  posterior.dates.assign(panel.dates().begin() + s, panel.dates().end());
  posterior.innovation_labels = InnovationLabels(k, s);
  posterior.innovation_draws.resize(retained, nb + na + k);
  ParameterPaths sums = ParameterPaths::Zero(k, s, n);

  Rng rng(mcmc.seed, 0);
  int kept = 0;
  for (int iter = 0; iter < mcmc.draws; ++iter) {
    try {
      // β path given A, h.
      for (int r = 0; r < n; ++r) beta_model.observation_covs[static_cast<std::size_t>(r)] = current.Covariance(r);
      beta_model.state_variances = sigma_beta;
      current.beta = SampleRandomWalkStates(beta_model, rng);

      for (int r = 0; r < n; ++r) {
        residuals.row(r) = (targets[static_cast<std::size_t>(r)] -
                            beta_designs[static_cast<std::size_t>(r)] * current.beta.row(r).transpose())
                               .transpose();
      }

      // α path: ŷ_i = −Σ_{j<i} a_ij ŷ_j + σ_i ε_i for i ≥ 2.
      if (na > 0) {
        for (int r = 0; r < n; ++r) {
          const auto idx = static_cast<std::size_t>(r);
          alpha_model.observations[idx] = residuals.row(r).tail(k - 1).transpose();
          Eigen::MatrixXd& z = alpha_model.designs[idx];
          for (int i = 1; i < k; ++i) {
            for (int j = 0; j < i; ++j) z(i - 1, AlphaIndex(i, j)) = -residuals(r, j);
          }
          alpha_model.observation_covs[idx] = current.h.row(r).tail(k - 1).array().exp().matrix().asDiagonal();
        }
        alpha_model.state_variances = sigma_alpha;
        current.alpha = SampleRandomWalkStates(alpha_model, rng);
      }

      // h path via the mixture representation of log ε².
      for (int r = 0; r < n; ++r) {
        structural.row(r) = (current.Contemporaneous(r) * residuals.row(r).transpose()).transpose();
      }
      for (int i = 0; i < k; ++i) {
        const double offset = std::max(1e-8 * structural.col(i).squaredNorm() / n, 1e-300);
        for (int r = 0; r < n; ++r) {
          const double e = structural(r, i);
          const double log_sq = std::log(e * e + offset);
          const double gap = log_sq - current.h(r, i);
          for (std::size_t c = 0; c < mixture.size(); ++c) {
            const double dev = gap - mixture[c].mean;
            mixture_density[c] = mixture[c].weight / std::sqrt(mixture[c].variance) *
                                 std::exp(-0.5 * dev * dev / mixture[c].variance);
          }
          std::size_t component;
          try {
            component = rng.Categorical(mixture_density);
          } catch (const NumericalError&) {
            // Far in the tail every density underflows; take the nearest mean.
            component = 0;
            double best = std::abs(gap - mixture[0].mean);
            for (std::size_t c = 1; c < mixture.size(); ++c) {
              if (std::abs(gap - mixture[c].mean) < best) {
                best = std::abs(gap - mixture[c].mean);
                component = c;
              }
            }
          }
          const auto idx = static_cast<std::size_t>(r);
          if (i == 0) h_model.observations[idx].resize(k);
          h_model.observations[idx][i] = log_sq - mixture[component].mean;
          h_model.observation_covs[idx](i, i) = mixture[component].variance;
        }
      }
      h_model.state_variances = sigma_h;
      current.h = SampleRandomWalkStates(h_model, rng);

      sigma_beta = DrawInnovationVariances(current.beta, priors.beta_innovation, rng);
      if (na > 0) {
        sigma_alpha = DrawInnovationVariances(current.alpha, priors.alpha_innovation, rng);
        if (interweave_alpha) {
          for (int j = 0; j < na; ++j) Interweave(current.alpha, sigma_alpha[j], alpha_model, j, priors.alpha_innovation, rng);
        }
      }
      sigma_h = DrawInnovationVariances(current.h, priors.h_innovation, rng);
      if (interweave_h) {
        for (int i = 0; i < k; ++i) Interweave(current.h, sigma_h[i], h_model, i, priors.h_innovation, rng);
      }
    } catch (const SamplerError&) {
      throw;
    } catch (const NumericalError& e) {
      throw SamplerError(std::string("sampler numerical failure: ") + e.what(), iter);
    }

    if (iter < mcmc.burn_in || (iter - mcmc.burn_in) % mcmc.thin != 0) continue;
    sums.beta += current.beta;
    sums.alpha += current.alpha;
    sums.h += current.h;
    posterior.innovation_draws.row(kept) << sigma_beta.cwiseSqrt().transpose(), sigma_alpha.cwiseSqrt().transpose(),
        sigma_h.cwiseSqrt().transpose();
    if (kept % stride == 0 &&
        (mcmc.stored_path_draws == 0 || static_cast<int>(posterior.path_draws.size()) < mcmc.stored_path_draws)) {
      posterior.path_draws.push_back(current);
    }
    ++kept;
  }

  const double inv = 1.0 / static_cast<double>(kept);
  posterior.mean_paths = ParameterPaths{k, s, sums.beta * inv, sums.alpha * inv, sums.h * inv};
  posterior.summary = PosteriorSummary(posterior);
  return posterior;
}

}  // namespace finres::tvpvar
