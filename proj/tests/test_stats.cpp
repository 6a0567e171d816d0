#include <doctest.h>

#include <cmath>
#include <sstream>

#include "finres/data/panel.hpp"
#include "finres/data/transform.hpp"
#include "finres/error.hpp"
#include "finres/rng.hpp"
#include "finres/stats/mediation.hpp"
#include "finres/stats/ols.hpp"
#include "finres/stats/pca.hpp"

using namespace finres;
using namespace finres::stats;
using std::chrono::year;

namespace {

data::TimeSeriesPanel Panel(const Eigen::MatrixXd& values) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < values.cols(); ++j) names.push_back("c" + std::to_string(j));
  return data::TimeSeriesPanel(data::MonthRange(year{2000} / 1, static_cast<std::size_t>(values.rows())), names,
                               values);
}

Eigen::VectorXd Noise(Rng& rng, Eigen::Index n, double sd = 1.0) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = sd * rng.Normal();
  return v;
}

double Correlation(const std::vector<double>& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  const Eigen::VectorXd xc = x.array() - x.mean();
  const Eigen::VectorXd yc = b.array() - b.mean();
  return xc.dot(yc) / std::sqrt(xc.squaredNorm() * yc.squaredNorm());
}

}  // namespace

TEST_CASE("pca single column") {
  Rng rng(1);
  const Eigen::VectorXd f = Noise(rng, 50);
  const auto pca = PrincipalComposite(Panel(f));
  CHECK(pca.loadings == std::vector{1.0});
  CHECK(pca.explained_fraction == doctest::Approx(1.0));
  const auto z = data::Standardize(std::vector<double>(f.data(), f.data() + f.size()));
  for (std::size_t t = 0; t < z.size(); ++t) CHECK(std::abs(pca.scores[t] - z[t]) < 1e-12);
}

TEST_CASE("pca of duplicated columns") {
  Rng rng(2);
  const Eigen::VectorXd f = Noise(rng, 80);
  for (int k : {2, 3, 5}) {
    Eigen::MatrixXd m(80, k);
    for (int j = 0; j < k; ++j) m.col(j) = f;
    const auto pca = PrincipalComposite(Panel(m));
    CHECK(std::abs(pca.explained_fraction - 1.0) < 1e-10);
    for (double l : pca.loadings) CHECK(std::abs(l - 1.0 / std::sqrt(k)) < 1e-10);
  }
}

TEST_CASE("pca recovers a planted factor") {
  Rng rng(3);
  const Eigen::VectorXd f = Noise(rng, 200);
  Eigen::MatrixXd m(200, 3);
  m.col(0) = f + Noise(rng, 200, 0.01);
  m.col(1) = 2.0 * f + Noise(rng, 200, 0.01);
  m.col(2) = -f + Noise(rng, 200, 0.01);
  for (bool standardize : {true, false}) {
    const auto pca = PrincipalComposite(Panel(m), standardize);
    CHECK(std::abs(Correlation(pca.scores, f)) > 0.99);
    double norm = 0.0, sum = 0.0;
    for (double l : pca.loadings) {
      norm += l * l;
      sum += l;
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);
    CHECK(sum >= 0.0);
    CHECK(pca.explained_fraction >= 0.0);
    CHECK(pca.explained_fraction <= 1.0);
  }
}

TEST_CASE("pca scores do not depend on column order") {
  Rng rng(4);
  Eigen::MatrixXd m(120, 4);
  const Eigen::VectorXd f = Noise(rng, 120);
  for (int j = 0; j < 4; ++j) m.col(j) = (j + 1) * f + Noise(rng, 120, 0.7);
  Eigen::MatrixXd permuted(120, 4);
  permuted << m.col(2), m.col(0), m.col(3), m.col(1);
  const auto a = PrincipalComposite(Panel(m));
  const auto b = PrincipalComposite(Panel(permuted));
  for (std::size_t t = 0; t < a.scores.size(); ++t) CHECK(std::abs(a.scores[t] - b.scores[t]) < 1e-9);
}

TEST_CASE("pca errors") {
  Eigen::MatrixXd m(10, 2);
  m.col(0).setConstant(1.0);
  m.col(1) = Eigen::VectorXd::LinSpaced(10, 0, 1);
  CHECK_THROWS_AS(PrincipalComposite(Panel(m)), DomainError);
  CHECK_THROWS_AS(PrincipalComposite(Panel(Eigen::MatrixXd::Random(3, 3))), ValidationError);
}

TEST_CASE("ols exact and flat fits") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const Eigen::MatrixXd xm = Eigen::Map<const Eigen::VectorXd>(x.data(), 5);
  std::vector<double> y(5);
  for (int i = 0; i < 5; ++i) y[static_cast<std::size_t>(i)] = 2.0 * x[static_cast<std::size_t>(i)];
  const auto exact = Ols(y, xm);
  CHECK(exact.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(exact.coefficients[0]) < 1e-12);
  CHECK(exact.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  const auto flat = Ols(std::vector<double>(5, 3.0), xm);
  CHECK(std::abs(flat.coefficients[1]) < 1e-12);
  CHECK(flat.r_squared == 0.0);
}

TEST_CASE("ols matches the hand-solved normal equations") {
  // x = [1,2,3,4], y = [2,1,4,3]: Sxx = 5, Sxy = 3, slope 0.6, intercept 1.
  const auto fit = Ols(std::vector<double>{2, 1, 4, 3}, (Eigen::MatrixXd(4, 1) << 1, 2, 3, 4).finished());
  CHECK(std::abs(fit.coefficients[1] - 0.6) < 1e-10);
  CHECK(std::abs(fit.coefficients[0] - 1.0) < 1e-10);
  // SSR = 3.2, s² = 1.6: se(slope) = √(1.6/5), se(intercept) = √(1.6·(1/4 + 2.5²/5)).
  CHECK(std::abs(fit.t_values[1] - 0.6 / std::sqrt(0.32)) < 1e-10);
  CHECK(std::abs(fit.t_values[0] - 1.0 / std::sqrt(2.4)) < 1e-10);
  CHECK(std::abs(fit.r_squared - 0.36) < 1e-12);
  CHECK(std::abs(fit.adj_r_squared - 0.04) < 1e-12);
  const std::vector<double> residuals{0.4, -1.2, 1.2, -0.4};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fit.residuals[i] - residuals[i]) < 1e-12);
}

TEST_CASE("ols invariants on random designs") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const Eigen::Index n = 30, p = 3;
    Eigen::MatrixXd x(n, p);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.Normal();
    std::vector<double> y(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = 1.0 + x(i, 0) - 0.5 * x(i, 2) + rng.Normal();
    const auto fit = Ols(y, x);
    CHECK(fit.r_squared >= 0.0);
    CHECK(fit.r_squared <= 1.0);
    CHECK(fit.adj_r_squared <= fit.r_squared);
    const Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(fit.residuals.data(), n);
    CHECK(std::abs(e.sum()) < 1e-8 * e.norm() * std::sqrt(double(n)));
    for (Eigen::Index j = 0; j < p; ++j) CHECK(std::abs(x.col(j).dot(e)) < 1e-8 * x.col(j).norm() * e.norm());
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    CHECK(e.squaredNorm() <= (yv.array() - yv.mean()).matrix().squaredNorm());
  }
}

TEST_CASE("ols errors") {
  Eigen::MatrixXd collinear(6, 2);
  collinear.col(0) = Eigen::VectorXd::LinSpaced(6, 1, 6);
  collinear.col(1) = 2.0 * collinear.col(0);
  CHECK_THROWS_AS(Ols(std::vector<double>{1, 2, 3, 5, 4, 6}, collinear), NumericalError);
  CHECK_THROWS_AS(Ols(std::vector<double>{1, 2, 3}, Eigen::MatrixXd::Ones(4, 1)), ValidationError);
}

TEST_CASE("significance stars") {
  CHECK(SignificanceStars(2.6) == "***");
  CHECK(SignificanceStars(-2.0) == "**");
  CHECK(SignificanceStars(1.7) == "*");
  CHECK(SignificanceStars(1.6) == "");
}

TEST_CASE("mediation planted link") {
  Rng rng(8);
  std::vector<double> cpu(192);
  for (auto& v : cpu) v = rng.Normal();
  std::vector<double> med(cpu.size());
  for (std::size_t i = 0; i < cpu.size(); ++i) med[i] = 0.5 * cpu[i];
  const auto report = MediationTwoStep({}, cpu, {{"m", med}});
  REQUIRE(report.equations.size() == 1);
  const auto& eq = report.equations[0];
  CHECK(eq.fit.coefficients[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eq.fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.slope_stars == "***");
}

TEST_CASE("mediation size under independence") {
  int quiet = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    std::vector<double> cpu(192), med(192);
    for (auto& v : cpu) v = rng.Normal();
    for (auto& v : med) v = rng.Normal();
    const auto report = MediationTwoStep({}, cpu, {{"m", med}});
    if (std::abs(report.equations[0].fit.t_values[1]) < 1.645) ++quiet;
  }
  CHECK(quiet >= 90);
}

TEST_CASE("mediation rejection rate over many seeds") {
  int rejected = 0;
  const int runs = 4000;
  for (int seed = 1; seed <= runs; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed), 1);
    std::vector<double> cpu(192), med(192);
    for (auto& v : cpu) v = rng.Normal();
    for (auto& v : med) v = rng.Normal();
    const auto report = MediationTwoStep({}, cpu, {{"m", med}});
    if (std::abs(report.equations[0].fit.t_values[1]) >= 1.645) ++rejected;
  }
  const double rate = static_cast<double>(rejected) / runs;
  CHECK(rate > 0.085);
  CHECK(rate < 0.115);
}

TEST_CASE("mediation without mediators and errors") {
  const std::vector<double> cpu{1, 2, 3, 4, 6};
  const auto report = MediationTwoStep({{"y", {1, 3, 2, 5, 4}}}, cpu, {});
  REQUIRE(report.equations.size() == 1);
  CHECK(report.equations[0].role == MediationEquation::Role::kOutcome);
  CHECK(report.equations[0].fit.coefficients.size() == 2);
  CHECK_THROWS_AS(MediationTwoStep({{"y", {1, 2, 3}}}, cpu, {}), ValidationError);
  CHECK_THROWS_AS(MediationTwoStep({{"y", {1, 2, 3, 4, 5}}}, std::vector<double>(5, 1.0), {}), ValidationError);
}

TEST_CASE("mediation csv golden layout") {
  // Hand-solved fits on cpu = [1,2,3,4] (Sxx = 5):
  //   [2,1,4,3]   slope 0.6, intercept 1,   SSR 3.2, R² 0.36, adj 0.04
  //   [3,1,2,4]   slope 0.4, intercept 1.5, SSR 4.2, R² 0.16, adj −0.26
  // negating, doubling or shifting the first series moves the coefficients
  // accordingly and leaves R² unchanged.
  const std::vector<double> cpu{1, 2, 3, 4};
  const auto report = MediationTwoStep({{"Intensity", {2, 1, 4, 3}}, {"Duration", {-2, -1, -4, -3}}}, cpu,
                                       {{"M1", {3, 1, 2, 4}}, {"M2", {4, 2, 8, 6}}, {"M3", {12, 11, 14, 13}}});
  std::ostringstream out;
  WriteMediationCsv(out, report);
  const std::string golden =
      "term,Intensity,Duration,M1,M2,M3\n"
      "CPU,0.6000,-0.6000,0.4000,1.2000,0.6000\n"
      "CPU_t,1.0607,-1.0607,0.6172,1.0607,1.0607\n"
      "Cons,1.0000,-1.0000,1.5000,2.0000,11.0000***\n"
      "Cons_t,0.6455,-0.6455,0.8452,0.6455,7.1005\n"
      "R2,0.3600,0.3600,0.1600,0.3600,0.3600\n"
      "R2_adj,0.0400,0.0400,-0.2600,0.0400,0.0400\n";
  CHECK(out.str() == golden);
}
