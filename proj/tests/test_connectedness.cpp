#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "finres/connectedness.hpp"
#include "finres/error.hpp"
#include "finres/rng.hpp"
#include "finres/tvpvar/simulate.hpp"

using namespace finres;
using namespace finres::connectedness;

namespace {

Eigen::MatrixXd RandomMatrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal();
  return m;
}

Eigen::MatrixXd StableB(Rng& rng, int k, double radius) {
  Eigen::MatrixXd b = RandomMatrix(rng, k, k);
  return b * (radius / b.eigenvalues().cwiseAbs().maxCoeff());
}

Eigen::MatrixXd RandomCovariance(Rng& rng, int k) {
  const Eigen::MatrixXd l = RandomMatrix(rng, k, k);
  return l * l.transpose() + 0.1 * Eigen::MatrixXd::Identity(k, k);
}

Eigen::MatrixXd RandomShares(Rng& rng, int k) {
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Uniform();
  return NormalizeGfevd(m);
}

tvpvar::ParameterPaths PlantedPaths(int periods) {
  // var2 = 0.8·lag(var1) + noise, var1 autonomous.
  Eigen::VectorXd beta(6);
  beta << 0.0, 0.3, 0.0, 0.0, 0.8, 0.0;
  return tvpvar::ParameterPaths::Constant(2, 1, periods, beta, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(2));
}

std::vector<data::Month> Dates(std::size_t n) { return data::MonthRange(std::chrono::year{2012} / 1, n); }

}  // namespace

TEST_CASE("vma coefficients") {
  const std::vector<Eigen::MatrixXd> zero{Eigen::MatrixXd::Zero(2, 2)};
  const auto flat = VmaCoefficients(zero, 4);
  CHECK(flat[0] == Eigen::MatrixXd::Identity(2, 2));
  for (int h = 1; h < 4; ++h) CHECK(flat[std::size_t(h)] == Eigen::MatrixXd::Zero(2, 2));

  const std::vector<Eigen::MatrixXd> scalar{Eigen::MatrixXd::Constant(1, 1, 0.5)};
  const auto lambda = VmaCoefficients(scalar, 4);
  const double expect[] = {1.0, 0.5, 0.25, 0.125};
  for (int h = 0; h < 4; ++h) CHECK(lambda[std::size_t(h)](0, 0) == expect[h]);
}

TEST_CASE("vma of a VAR(2) matches companion powers") {
  Rng rng(2);
  const int k = 3;
  const std::vector<Eigen::MatrixXd> lags{0.3 * RandomMatrix(rng, k, k), 0.2 * RandomMatrix(rng, k, k)};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  companion.topLeftCorner(k, k) = lags[0];
  companion.topRightCorner(k, k) = lags[1];
  companion.bottomLeftCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
  const auto lambda = VmaCoefficients(lags, 8);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(2 * k, 2 * k);
  for (int h = 0; h < 8; ++h) {
    CHECK((lambda[std::size_t(h)] - power.topLeftCorner(k, k)).cwiseAbs().maxCoeff() < 1e-12);
    power = companion * power;
  }
}

TEST_CASE("gfevd hand cases") {
  const std::vector<Eigen::MatrixXd> white{Eigen::MatrixXd::Identity(2, 2)};
  CHECK(Gfevd(white, Eigen::MatrixXd::Identity(2, 2), 1) == Eigen::MatrixXd::Identity(2, 2));
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag.diagonal() << 2.0, 0.3;
  CHECK(Gfevd(white, diag, 1) == Eigen::MatrixXd::Identity(2, 2));

  Eigen::MatrixXd omega(2, 2);
  omega << 1.0, 0.5, 0.5, 1.0;
  Eigen::MatrixXd expect(2, 2);
  expect << 1.0, 0.25, 0.25, 1.0;
  const Eigen::MatrixXd phi = Gfevd(white, omega, 1);
  CHECK((phi - expect).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::MatrixXd normalized(2, 2);
  normalized << 0.8, 0.2, 0.2, 0.8;
  CHECK((NormalizeGfevd(phi) - normalized).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(NormalizeGfevd(Eigen::MatrixXd::Identity(3, 3)) == Eigen::MatrixXd::Identity(3, 3));
}

TEST_CASE("gfevd matches a term-by-term expansion") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(seed);
    const Eigen::MatrixXd b = StableB(rng, 2, 0.7);
    const Eigen::MatrixXd omega = RandomCovariance(rng, 2);
    const int horizon = 3;
    std::vector<Eigen::MatrixXd> powers{Eigen::MatrixXd::Identity(2, 2)};
    for (int h = 1; h < horizon; ++h) powers.push_back(b * powers.back());

    Eigen::MatrixXd oracle(2, 2);
    for (int j = 0; j < 2; ++j) {
      double denom = 0.0;
      for (int h = 0; h < horizon; ++h) {
        for (int a = 0; a < 2; ++a) {
          for (int c = 0; c < 2; ++c) denom += powers[h](j, a) * omega(a, c) * powers[h](j, c);
        }
      }
      for (int k = 0; k < 2; ++k) {
        double num = 0.0;
        for (int h = 0; h < horizon; ++h) {
          double term = 0.0;
          for (int a = 0; a < 2; ++a) term += powers[h](j, a) * omega(a, k);
          num += term * term;
        }
        oracle(j, k) = num / omega(k, k) / denom;
      }
    }
    const auto vma = VmaCoefficients(std::vector{b}, horizon);
    CHECK((Gfevd(vma, omega, horizon) - oracle).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gfevd is permutation equivariant") {
  Rng rng(9);
  const int k = 4;
  const auto vma = VmaCoefficients(std::vector{StableB(rng, k, 0.6)}, 5);
  const Eigen::MatrixXd omega = RandomCovariance(rng, k);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(k);
  perm.indices() << 2, 0, 3, 1;
  std::vector<Eigen::MatrixXd> permuted;
  for (const auto& m : vma) permuted.push_back(perm * m * perm.transpose());
  const Eigen::MatrixXd direct = Gfevd(vma, omega, 5);
  const Eigen::MatrixXd back = perm.transpose() * Gfevd(permuted, perm * omega * perm.transpose(), 5) * perm;
  CHECK((direct - back).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gfevd and normalization errors") {
  const std::vector<Eigen::MatrixXd> white{Eigen::MatrixXd::Identity(2, 2)};
  Eigen::MatrixXd zero_var(2, 2);
  zero_var << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(Gfevd(white, zero_var, 1), DomainError);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS(Gfevd(white, indefinite, 1));
  CHECK_THROWS_AS(Gfevd(white, Eigen::MatrixXd::Identity(2, 2), 2), ValidationError);

  Eigen::MatrixXd zero_row(2, 2);
  zero_row << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(NormalizeGfevd(zero_row), NumericalError);
  Eigen::MatrixXd negative(2, 2);
  negative << 1.0, -0.1, 0.0, 1.0;
  CHECK_THROWS_AS(NormalizeGfevd(negative), ValidationError);
}

TEST_CASE("normalized rows sum to one") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    const int k = 2 + int(seed % 5);
    const Eigen::MatrixXd shares = RandomShares(rng, k);
    CHECK((shares.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("table hand cases") {
  const auto none = BuildTable(Eigen::MatrixXd::Identity(3, 3), 12);
  CHECK(none.tci == 0.0);
  CHECK(none.from.isZero());
  CHECK(none.to.isZero());
  CHECK(none.net.isZero());
  CHECK(none.npdc.isZero());

  Eigen::MatrixXd shares(2, 2);
  shares << 0.8, 0.2, 0.2, 0.8;
  const auto sym = BuildTable(shares, 12);
  CHECK(sym.tci == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(std::abs(sym.net[0]) < 1e-12);
  CHECK(sym.npdc.isZero());
  CHECK(sym.horizon == 12);

  shares << 0.9, 0.1, 0.4, 0.6;
  const auto lopsided = BuildTable(shares, 12);
  CHECK(lopsided.from[0] == doctest::Approx(10.0));
  CHECK(lopsided.to[0] == doctest::Approx(40.0));
  CHECK(lopsided.net[0] == doctest::Approx(30.0));
  CHECK(lopsided.npdc(0, 1) == doctest::Approx(30.0));
  const auto column = BuildTable(shares, 12, ToConvention::kColumnNormalized);
  CHECK(column.to[0] == doctest::Approx(100.0 * 0.4 / 1.3));
  CHECK(column.from[0] == lopsided.from[0]);
}

TEST_CASE("table identities on random shares") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed, 4);
    const int k = 2 + int(seed % 6);
    const auto table = BuildTable(RandomShares(rng, k), 12);
    CHECK(std::abs(table.net.sum()) < 1e-10);
    CHECK(table.tci >= 0.0);
    CHECK(table.tci <= 100.0);
    CHECK(std::abs(table.tci - table.from.mean()) < 1e-10);
    CHECK(std::abs(table.tci - table.to.mean()) < 1e-10);
    CHECK(table.npdc.diagonal().isZero());
    CHECK(table.npdc == -table.npdc.transpose());
    CHECK((table.net - table.npdc.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("planted one-directional system") {
  const auto paths = PlantedPaths(30);
  const auto dynamic = FromPaths(paths, Dates(30), {"lead", "follow"}, 12);
  REQUIRE(dynamic.tables.size() == 30);
  for (const auto& table : dynamic.tables) {
    CHECK(table.net[0] > 0.0);
    CHECK(table.net[1] < 0.0);
  }
  const auto stat = StaticConnectedness(dynamic);
  CHECK(stat.net[0] > 0.0);
  CHECK(stat.net[1] < 0.0);
  CHECK((stat.shares - dynamic.tables.front().shares).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("static table averages shares") {
  Rng rng(12);
  DynamicConnectedness dynamic;
  dynamic.names = {"a", "b", "c"};
  dynamic.dates = Dates(5);
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(3, 3);
  for (int t = 0; t < 5; ++t) {
    dynamic.tables.push_back(BuildTable(RandomShares(rng, 3), 12));
    total += dynamic.tables.back().shares;
  }
  const auto stat = StaticConnectedness(dynamic);
  const auto expect = BuildTable(NormalizeGfevd(total / 5.0), 12);
  CHECK((stat.shares - expect.shares).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(stat.tci - expect.tci) < 1e-12);
  CHECK((stat.net - expect.net).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("static table from a constant VAR") {
  auto spec = tvpvar::TvpVarSpec::Make(2, 1, 3000);
  tvpvar::DgpTruth truth;
  truth.paths = PlantedPaths(1);
  const auto sim = tvpvar::SimulateDgp(spec, truth, 4);
  const auto fitted = StaticFromConstantVar(sim.panel, 1, 12);
  const auto exact = StaticConnectedness(FromPaths(PlantedPaths(1), Dates(1), {"y1", "y2"}, 12));
  CHECK(fitted.net[0] > 0.0);
  CHECK((fitted.shares - exact.shares).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("dynamic connectedness from an estimated model") {
  const int t_len = 300;
  auto spec = tvpvar::TvpVarSpec::Make(2, 1, t_len);
  Eigen::VectorXd beta(6);
  beta << 0.0, 0.5, 0.1, 0.0, 0.1, 0.3;
  tvpvar::DgpTruth truth;
  truth.paths = tvpvar::ParameterPaths::Constant(2, 1, 1, beta, Eigen::VectorXd::Constant(1, 0.2),
                                                 Eigen::VectorXd::Zero(2));
  const auto sim = tvpvar::SimulateDgp(spec, truth, 5);
  spec.mcmc.draws = 1200;
  spec.mcmc.burn_in = 200;
  spec.mcmc.stored_path_draws = 5;
  const auto a = ComputeDynamic(sim.panel, spec, 12);
  const auto b = ComputeDynamic(sim.panel, spec, 12);
  REQUIRE(a.tables.size() == std::size_t(t_len - 1));
  Eigen::VectorXd tci(a.tables.size());
  for (std::size_t t = 0; t < a.tables.size(); ++t) {
    tci[Eigen::Index(t)] = a.tables[t].tci;
    CHECK(a.tables[t].shares == b.tables[t].shares);
  }
  const double sd = std::sqrt((tci.array() - tci.mean()).square().sum() / double(tci.size() - 1));
  CHECK(sd < 5.0);
}

TEST_CASE("connectedness csv layouts") {
  Eigen::MatrixXd shares(2, 2);
  shares << 0.75, 0.25, 0.5, 0.5;
  DynamicConnectedness dynamic;
  dynamic.names = {"A", "B"};
  dynamic.dates = Dates(2);
  dynamic.tables = {BuildTable(shares, 12), BuildTable(shares, 12)};

  std::ostringstream stat;
  WriteStaticCsv(stat, dynamic.tables[0], dynamic.names);
  CHECK(stat.str() ==
        "market,A,B,From\n"
        "A,75.00,25.00,25.00\n"
        "B,50.00,50.00,50.00\n"
        "To,50.00,25.00,37.50\n");

  std::ostringstream dyn;
  WriteDynamicCsv(dyn, dynamic);
  const std::string text = dyn.str();
  CHECK(text.rfind("date,index_type,market,value\n2012-01,TCI,ALL,37.5\n", 0) == 0);
  CHECK(text.find("2012-02,NET,A,25\n") != std::string::npos);
  CHECK(text.find("2012-02,NET,B,-25\n") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * (1 + 3 * 2));

  std::ostringstream npdc;
  WriteNpdcCsv(npdc, dynamic);
  CHECK(npdc.str() ==
        "date,from,to,npdc\n"
        "2012-01,A,B,25\n"
        "2012-01,B,A,-25\n"
        "2012-02,A,B,25\n"
        "2012-02,B,A,-25\n");
}
