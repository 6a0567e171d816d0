#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "finres/error.hpp"
#include "finres/rng.hpp"
#include "finres/tvpvar/archive.hpp"
#include "finres/tvpvar/diagnostics.hpp"
#include "finres/tvpvar/sampler.hpp"
#include "finres/tvpvar/simulate.hpp"
#include "finres/tvpvar/state_space.hpp"

using namespace finres;
using namespace finres::tvpvar;

namespace {

std::vector<double> NormalChain(std::uint64_t seed, std::size_t n, std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.Normal();
  return v;
}

DgpTruth ConstantVar(const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha, const Eigen::VectorXd& h, int k) {
  DgpTruth truth;
  truth.paths = ParameterPaths::Constant(k, 1, 1, beta, alpha, h);
  return truth;
}

TvpVarSpec SmallSpec(int k, int t_len, int draws, int burn_in, std::uint64_t seed) {
  auto spec = TvpVarSpec::Make(k, 1, t_len);
  spec.mcmc.draws = draws;
  spec.mcmc.burn_in = burn_in;
  spec.mcmc.seed = seed;
  spec.mcmc.stored_path_draws = 20;
  return spec;
}

SimulatedData BivariateData(int t_len, std::uint64_t seed) {
  Eigen::VectorXd beta(6);
  beta << 0, 0.5, 0.1, 0, 0.1, 0.3;
  Eigen::VectorXd alpha(1);
  alpha << 0.2;
  return SimulateDgp(TvpVarSpec::Make(2, 1, t_len), ConstantVar(beta, alpha, Eigen::VectorXd::Zero(2), 2), seed);
}

std::string Archive(const TvpVarPosterior& posterior) {
  std::ostringstream out;
  SavePosterior(out, posterior);
  return out.str();
}

double Autocorrelation(const Eigen::VectorXd& x, int lag) {
  const Eigen::VectorXd c = x.array() - x.mean();
  return c.head(c.size() - lag).dot(c.tail(c.size() - lag)) / c.squaredNorm();
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(42), b(42), c(42, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.Normal();
    CHECK(x == b.Normal());
    differs = differs || x != c.Normal();
  }
  CHECK(differs);
  CHECK(DeriveSeed(1, 2) != DeriveSeed(2, 1));
}

TEST_CASE("rng distribution moments") {
  Rng rng(5);
  const int n = 200000;
  double sum = 0.0, sq = 0.0, ig = 0.0, u_min = 1.0, u_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
    ig += rng.InverseGamma(5.0, 8.0);
    const double u = rng.Uniform();
    u_min = std::min(u_min, u);
    u_max = std::max(u_max, u);
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.015);
  CHECK(std::abs(ig / n - 2.0) < 0.02);
  CHECK(u_min > 0.0);
  CHECK(u_max < 1.0);

  const std::vector<double> weights{0.0, 3.0, 1.0};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 40000; ++i) ++counts[rng.Categorical(weights)];
  CHECK(counts[0] == 0);
  CHECK(std::abs(counts[1] / 40000.0 - 0.75) < 0.01);
}

TEST_CASE("log chi-square mixture moments") {
  double w = 0.0, mean = 0.0, second = 0.0;
  for (const auto& c : LogChiSquareMixture()) {
    w += c.weight;
    mean += c.weight * c.mean;
    second += c.weight * (c.variance + c.mean * c.mean);
  }
  CHECK(LogChiSquareMixture().size() == 10);
  CHECK(std::abs(w - 1.0) < 1e-4);
  // log χ²₁ has mean ψ(½) + log 2 and variance π²/2.
  CHECK(std::abs(mean - (-1.2703628454614782)) < 1e-3);
  CHECK(std::abs(second - mean * mean - std::numbers::pi * std::numbers::pi / 2.0) < 1e-2);
}

TEST_CASE("simulate with zero innovations keeps parameters constant") {
  Eigen::VectorXd beta(6);
  beta << 0.1, 0.5, 0.1, -0.2, 0.1, 0.3;
  Eigen::VectorXd alpha(1);
  alpha << 0.4;
  Eigen::VectorXd h(2);
  h << -0.5, 0.3;
  const auto sim = SimulateDgp(TvpVarSpec::Make(2, 1, 60), ConstantVar(beta, alpha, h, 2), 3);
  CHECK(sim.truth.periods() == 59);
  CHECK(sim.panel.rows() == 60);
  for (int t = 0; t < sim.truth.periods(); ++t) {
    CHECK(sim.truth.beta.row(t).transpose() == beta);
    CHECK(sim.truth.alpha(t, 0) == alpha[0]);
    CHECK(sim.truth.h.row(t).transpose() == h);
  }

  auto moving = ConstantVar(beta, alpha, h, 2);
  moving.h_innovation_var = Eigen::VectorXd::Constant(2, 0.01);
  const auto walk = SimulateDgp(TvpVarSpec::Make(2, 1, 60), moving, 3);
  CHECK(walk.truth.beta.row(58).transpose() == beta);
  CHECK(walk.truth.h.row(58).transpose() != h);
}

TEST_CASE("simulate white noise and AR moments") {
  const int t_len = 2000;
  const auto noise = SimulateDgp(TvpVarSpec::Make(3, 1, t_len),
                                 ConstantVar(Eigen::VectorXd::Zero(BetaSize(3, 1)), Eigen::VectorXd::Zero(3),
                                             Eigen::VectorXd::Zero(3), 3),
                                 11);
  const Eigen::MatrixXd y = noise.panel.values().bottomRows(t_len - 1);
  const Eigen::MatrixXd centered = y.rowwise() - y.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / double(y.rows() - 1);
  CHECK((cov - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 0.15);

  Eigen::VectorXd beta(2);
  beta << 0.0, 0.5;
  const auto ar = SimulateDgp(TvpVarSpec::Make(1, 1, t_len),
                              ConstantVar(beta, Eigen::VectorXd(0), Eigen::VectorXd::Zero(1), 1), 12);
  CHECK(std::abs(Autocorrelation(ar.panel.values().col(0), 1) - 0.5) < 0.06);
}

TEST_CASE("simulate is seeded and validates input") {
  const auto a = BivariateData(50, 9);
  const auto b = BivariateData(50, 9);
  const auto c = BivariateData(50, 10);
  CHECK(a.panel.values() == b.panel.values());
  CHECK(a.panel.values() != c.panel.values());

  auto bad = ConstantVar(Eigen::VectorXd::Zero(6), Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(2), 2);
  bad.h_innovation_var = Eigen::VectorXd::Constant(2, -1.0);
  CHECK_THROWS_AS(SimulateDgp(TvpVarSpec::Make(2, 1, 50), bad, 1), ValidationError);
  CHECK_THROWS_AS(SimulateDgp(TvpVarSpec::Make(3, 1, 50), ConstantVar(Eigen::VectorXd::Zero(6),
                                                                      Eigen::VectorXd::Zero(1),
                                                                      Eigen::VectorXd::Zero(2), 2),
                              1),
                  ValidationError);
}

TEST_CASE("ffbs draws average to the smoothed mean") {
  // Scalar local level y_t = x_t + v_t, x_{t+1} = x_t + u_t, smoothed by an
  // explicit Kalman filter and Rauch–Tung–Striebel pass.
  const int n = 40;
  const double r = 0.5, q = 0.1, a0 = 0.0, p0 = 4.0;
  Rng data_rng(77);
  RandomWalkStateModel model;
  double level = 0.0;
  for (int t = 0; t < n; ++t) {
    level += std::sqrt(q) * data_rng.Normal();
    model.observations.push_back(Eigen::VectorXd::Constant(1, level + std::sqrt(r) * data_rng.Normal()));
    model.designs.push_back(Eigen::MatrixXd::Ones(1, 1));
    model.observation_covs.push_back(Eigen::MatrixXd::Constant(1, 1, r));
  }
  model.state_variances = Eigen::VectorXd::Constant(1, q);
  model.initial_mean = Eigen::VectorXd::Constant(1, a0);
  model.initial_cov = Eigen::MatrixXd::Constant(1, 1, p0);

  std::vector<double> filt_m(n), filt_p(n), pred_m(n), pred_p(n);
  double m = a0, p = p0;
  for (int t = 0; t < n; ++t) {
    pred_m[t] = m;
    pred_p[t] = p;
    const double gain = p / (p + r);
    m += gain * (model.observations[static_cast<std::size_t>(t)][0] - m);
    p *= 1.0 - gain;
    filt_m[t] = m;
    filt_p[t] = p;
    p += q;
  }
  std::vector<double> smooth(n);
  smooth[n - 1] = filt_m[n - 1];
  for (int t = n - 2; t >= 0; --t) {
    const double j = filt_p[t] / pred_p[t + 1];
    smooth[t] = filt_m[t] + j * (smooth[t + 1] - pred_m[t + 1]);
  }

  Rng rng(3);
  Eigen::VectorXd average = Eigen::VectorXd::Zero(n);
  const int sweeps = 20000;
  for (int s = 0; s < sweeps; ++s) average += SampleRandomWalkStates(model, rng).col(0);
  average /= sweeps;
  for (int t = 0; t < n; ++t) CHECK(std::abs(average[t] - smooth[t]) < 0.02);
}

TEST_CASE("geweke diagnostic") {
  std::vector<double> broken(1000);
  Rng rng(4);
  for (std::size_t i = 0; i < broken.size(); ++i) broken[i] = (i < 500 ? 0.0 : 10.0) + 0.01 * rng.Normal();
  CHECK(std::abs(GewekeCd(broken).z) > 10.0);
  CHECK(GewekeCd(broken).p_value < 1e-6);

  // First 10% and last 50% hold the same values in the same order.
  std::vector<double> mirrored(1000, 0.0);
  for (std::size_t i = 0; i < 100; ++i) {
    const double v = std::sin(0.7 * double(i)) + 0.1 * double(i % 7);
    for (std::size_t copy = 0; copy < 5; ++copy) mirrored[500 + copy * 100 + i] = v;
    mirrored[i] = v;
  }
  CHECK(GewekeCd(mirrored).z == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(GewekeCd(std::vector<double>(50, 1.0)), ValidationError);
  CHECK_THROWS_AS(GewekeCd(std::vector<double>(200, 1.0)), ValidationError);
}

TEST_CASE("inefficiency factor") {
  const auto iid = NormalChain(8, 10000);
  const double f = InefficiencyFactor(iid);
  CHECK(f >= 0.8);
  CHECK(f <= 1.3);

  std::vector<double> alternating(1000);
  for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 == 0 ? 1.0 : -1.0;
  CHECK(InefficiencyFactor(alternating) < 1.0);
  CHECK(InefficiencyFactor(alternating) >= 0.0);

  CHECK_THROWS_AS(InefficiencyFactor(std::vector<double>(500, 2.0)), ValidationError);
  CHECK(ParzenWeight(0.0) == 1.0);
  CHECK(ParzenWeight(1.0) == 0.0);
  CHECK(ParzenWeight(0.5) == doctest::Approx(0.25));
}

TEST_CASE("percentiles match a sort oracle") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto v = NormalChain(seed, 1000);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.0, 0.025, 0.1, 0.5, 0.975, 1.0}) {
      const double pos = q * 999.0;
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const std::size_t hi = std::min<std::size_t>(lo + 1, 999);
      const double expect = sorted[lo] + (pos - double(lo)) * (sorted[hi] - sorted[lo]);
      CHECK(std::abs(Percentile(v, q) - expect) < 1e-12);
    }
  }
}

TEST_CASE("summary of a constant chain") {
  const auto row = SummarizeChain("c", std::vector<double>(500, 2.5));
  CHECK(row.mean == 2.5);
  CHECK(row.sd == 0.0);
  CHECK(row.lower95 == 2.5);
  CHECK(row.upper95 == 2.5);
  CHECK(std::isnan(row.cd));
  CHECK(std::isnan(row.ineff));
}

TEST_CASE("posterior invariants on a short run") {
  const auto sim = BivariateData(80, 21);
  const auto spec = SmallSpec(2, 80, 600, 100, 5);
  const auto post = EstimateMcmc(sim.panel, spec);

  CHECK(post.innovation_draws.rows() == 500);
  CHECK(post.path_draws.size() == 20);
  CHECK(post.dates.size() == 79);
  const std::vector<std::string> labels{"sigma_beta_1", "sigma_beta_2", "sigma_beta_3", "sigma_beta_4", "sigma_beta_5",
                                        "sigma_beta_6", "sigma_alpha_1", "sigma_h_1", "sigma_h_2"};
  REQUIRE(post.summary.size() == labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CHECK(post.summary[i].name == labels[i]);
    CHECK(post.summary[i].lower95 <= post.summary[i].mean);
    CHECK(post.summary[i].mean <= post.summary[i].upper95);
    CHECK(post.summary[i].sd >= 0.0);
  }
  CHECK((post.innovation_draws.array() > 0.0).all());

  for (const auto& draw : post.path_draws) {
    for (int t = 0; t < draw.periods(); ++t) {
      const Eigen::MatrixXd a = draw.Contemporaneous(t);
      CHECK(a.diagonal() == Eigen::VectorXd::Ones(2));
      CHECK(a(0, 1) == 0.0);
      CHECK((draw.Volatility(t).array() > 0.0).all());
      const Eigen::MatrixXd omega = draw.Covariance(t);
      CHECK((omega - omega.transpose()).norm() < 1e-12 * omega.norm());
      CHECK(omega.llt().info() == Eigen::Success);
    }
  }
}

TEST_CASE("estimation is deterministic in the seed") {
  const auto sim = BivariateData(60, 22);
  const auto a = EstimateMcmc(sim.panel, SmallSpec(2, 60, 300, 50, 9));
  const auto b = EstimateMcmc(sim.panel, SmallSpec(2, 60, 300, 50, 9));
  const auto c = EstimateMcmc(sim.panel, SmallSpec(2, 60, 300, 50, 10));
  CHECK(Archive(a) == Archive(b));
  CHECK(Archive(a) != Archive(c));
}

TEST_CASE("posterior archive round trip") {
  const auto sim = BivariateData(60, 23);
  const auto post = EstimateMcmc(sim.panel, SmallSpec(2, 60, 300, 50, 4));
  const std::string text = Archive(post);
  std::istringstream in(text);
  const auto loaded = LoadPosterior(in);
  CHECK(Archive(loaded) == text);
  CHECK(loaded.mean_paths.beta == post.mean_paths.beta);
  CHECK(loaded.mean_paths.h == post.mean_paths.h);
  CHECK(loaded.innovation_draws == post.innovation_draws);
  CHECK(loaded.variables == post.variables);
  CHECK(loaded.dates == post.dates);
  REQUIRE(loaded.path_draws.size() == post.path_draws.size());
  CHECK(loaded.path_draws.back().alpha == post.path_draws.back().alpha);
  REQUIRE(loaded.summary.size() == post.summary.size());
  CHECK(loaded.summary[0].mean == post.summary[0].mean);

  std::istringstream broken(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(LoadPosterior(broken), ValidationError);
}

TEST_CASE("tighter innovation priors flatten the coefficient paths") {
  const auto sim = BivariateData(100, 24);
  auto spread = [&](double scale) {
    auto spec = SmallSpec(2, 100, 800, 200, 6);
    spec.priors.beta_innovation = {20.0, scale};
    const auto post = EstimateMcmc(sim.panel, spec);
    const Eigen::MatrixXd& beta = post.mean_paths.beta;
    const Eigen::RowVectorXd mean = beta.colwise().mean();
    return (beta.rowwise() - mean).cwiseAbs().maxCoeff();
  };
  const double loose = spread(1e-2);
  const double tight = spread(1e-6);
  CHECK(tight < loose);
}

TEST_CASE("estimation errors") {
  const auto sim = BivariateData(60, 25);
  CHECK_THROWS_AS(EstimateMcmc(sim.panel, SmallSpec(3, 60, 300, 50, 1)), ValidationError);
  CHECK_THROWS_AS(EstimateMcmc(sim.panel, SmallSpec(2, 61, 300, 50, 1)), ValidationError);
  CHECK_THROWS_AS(TvpVarSpec::Make(2, 1, 11).Validate(), ValidationError);
  auto spec = SmallSpec(2, 60, 300, 50, 1);
  spec.mcmc.burn_in = 300;
  CHECK_THROWS_AS(EstimateMcmc(sim.panel, spec), ValidationError);
  spec = SmallSpec(2, 60, 300, 50, 1);
  spec.priors.cov_h0(0, 0) = -1.0;
  CHECK_THROWS_AS(EstimateMcmc(sim.panel, spec), ValidationError);
}
