#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finres/error.hpp"
#include "finres/resilience.hpp"
#include "finres/rng.hpp"

using namespace finres;
using namespace finres::resilience;

namespace {

struct Direct {
  double intensity;
  double duration;
};

Direct DirectFormula(const std::vector<double>& path) {
  double peak = 0.0;
  for (double v : path) peak = std::max(peak, std::fabs(v));
  double gaps = 0.0, weighted = 0.0;
  for (std::size_t n = 0; n < path.size(); ++n) {
    const double d = peak - std::fabs(path[n]);
    gaps += d;
    weighted += double(n + 1) * d;
  }
  return {gaps / (double(path.size()) * peak), gaps > 0.0 ? weighted / gaps : 0.0};
}

irf::IrfSurface SurfaceFromPaths(const std::vector<std::vector<double>>& paths) {
  const int horizon = static_cast<int>(paths.front().size());
  irf::IrfSurface s(data::MonthRange(std::chrono::year{2015} / 3, paths.size()), {"shock", "market"}, horizon);
  for (std::size_t t = 0; t < paths.size(); ++t) {
    for (int n = 1; n <= horizon; ++n) {
      s.at(int(t), n, 1, 0) = paths[t][std::size_t(n - 1)];
      s.at(int(t), n, 0, 0) = 1.0;
      s.at(int(t), n, 0, 1) = 0.0;
      s.at(int(t), n, 1, 1) = 1.0;
    }
  }
  return s;
}

std::vector<double> Spike(int n) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v[0] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("shock gap examples") {
  CHECK(ShockGap(std::vector{1.0, 0.0, 0.0}) == std::vector{0.0, 1.0, 1.0});
  CHECK(ShockGap(std::vector{4.0, 4.0, 4.0}) == std::vector{0.0, 0.0, 0.0});
  CHECK(ShockGap(std::vector{-2.0, 1.0}) == std::vector{0.0, 1.0});
}

TEST_CASE("intensity examples") {
  CHECK(Intensity(Spike(12)) == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
  CHECK(Intensity(std::vector{3.0, 3.0, -3.0}) == 0.0);
  CHECK(Intensity(std::vector{1.0, 0.5}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(Intensity(std::vector{0.0, 0.0}), DomainError);
}

TEST_CASE("duration examples") {
  const auto spike = Duration(Spike(12));
  CHECK(spike.value == doctest::Approx(7.0).epsilon(1e-15));
  CHECK_FALSE(spike.degenerate);
  CHECK(Duration(std::vector{1.0, 0.5}).value == doctest::Approx(2.0).epsilon(1e-15));
  const auto flat = Duration(std::vector{2.0, 2.0, 2.0});
  CHECK(flat.value == 0.0);
  CHECK(flat.degenerate);
  CHECK_THROWS_AS(Duration(std::vector{0.0}), DomainError);
}

TEST_CASE("indices match the direct formula on random paths") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform() * 20);
    std::vector<double> path(static_cast<std::size_t>(n));
    for (auto& v : path) v = rng.Normal();
    const auto expect = DirectFormula(path);
    CHECK(std::abs(Intensity(path) - expect.intensity) < 1e-12);
    CHECK(std::abs(Duration(path).value - expect.duration) < 1e-12);
  }
}

TEST_CASE("scale, sign and permutation properties") {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 12;
    std::vector<double> path(n);
    for (auto& v : path) v = rng.Normal();
    const double intensity = Intensity(path);
    const auto duration = Duration(path);

    CHECK(intensity >= 0.0);
    CHECK(intensity <= (n - 1.0) / n + 1e-15);
    CHECK(duration.value >= 1.0);
    CHECK(duration.value <= n);

    for (double c : {3.0, -1.0, -0.01, 1e6}) {
      std::vector<double> scaled(path);
      for (auto& v : scaled) v *= c;
      CHECK(std::abs(Intensity(scaled) - intensity) < 1e-12);
      CHECK(std::abs(Duration(scaled).value - duration.value) < 1e-12);
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::reverse(order.begin(), order.end());
    std::rotate(order.begin(), order.begin() + trial % n, order.end());
    std::vector<double> permuted(n);
    for (std::size_t i = 0; i < order.size(); ++i) permuted[i] = path[order[i]];
    const auto gap = ShockGap(path);
    const auto permuted_gap = ShockGap(permuted);
    for (std::size_t i = 0; i < order.size(); ++i) CHECK(permuted_gap[i] == gap[order[i]]);
  }
}

TEST_CASE("series over a surface") {
  std::vector<std::vector<double>> paths(5, std::vector{0.2, 0.8, 0.4, 0.1});
  paths[2] = {1.0, 1.0, 1.0, 1.0};
  paths[3] = {0.6, 2.4, 1.2, 0.3};
  const auto surface = SurfaceFromPaths(paths);
  const auto series = ComputeSeries(surface, "market", "shock");
  CHECK(series.market == "market");
  CHECK(series.shock == "shock");
  CHECK(series.horizon == 4);
  CHECK(series.dates == surface.dates());
  for (int t : {0, 1, 4}) {
    CHECK(series.intensity[t] == series.intensity[0]);
    CHECK(series.duration[t] == series.duration[0]);
  }
  CHECK(std::abs(series.intensity[3] - series.intensity[0]) < 1e-15);
  CHECK(series.degenerate[2]);
  CHECK(series.duration[2] == 0.0);
  CHECK_FALSE(series.degenerate[0]);

  paths[1] = {0.0, 0.0, 0.0, 0.0};
  try {
    ComputeSeries(SurfaceFromPaths(paths), 1, 0);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("2015-04") != std::string::npos);
  }
}

TEST_CASE("resilience csv round trip") {
  std::vector<std::vector<double>> paths{{0.2, 0.8, 0.4}, {1.0, 1.0, 1.0}, {0.5, 0.1, 0.05}};
  const auto surface = SurfaceFromPaths(paths);
  std::vector<ResilienceSeries> series{ComputeSeries(surface, 1, 0), ComputeSeries(surface, 0, 0)};
  std::ostringstream out;
  WriteResilienceCsv(out, series);
  const std::string text = out.str();
  CHECK(text.rfind("date,market,shock,intensity,duration,degenerate\n", 0) == 0);
  CHECK(text.find("2015-04,market,shock,0,0,1\n") != std::string::npos);

  std::istringstream in(text);
  const auto back = ReadResilienceCsv(in, "resilience.csv");
  REQUIRE(back.size() == 2);
  CHECK(back[0].market == "market");
  CHECK(back[1].market == "shock");
  CHECK(back[0].dates == series[0].dates);
  CHECK(back[0].intensity == series[0].intensity);
  CHECK(back[0].duration == series[0].duration);
  CHECK(back[0].degenerate == series[0].degenerate);

  std::istringstream bad("date,market,shock,intensity,duration,degenerate\n2015-03,a,b,0.1,2,maybe\n");
  CHECK_THROWS_AS(ReadResilienceCsv(bad, "r.csv"), ValidationError);
}
