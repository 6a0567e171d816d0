#include "finres/tvpvar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "finres/error.hpp"

namespace finres::tvpvar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double Mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double Autocovariance(std::span<const double> x, double mean, std::size_t lag) {
  double sum = 0.0;
  for (std::size_t t = 0; t + lag < x.size(); ++t) sum += (x[t] - mean) * (x[t + lag] - mean);
  return sum / static_cast<double>(x.size());
}

}  // namespace

double ParzenWeight(double x) {
  x = std::abs(x);
  if (x <= 0.5) return 1.0 - 6.0 * x * x + 6.0 * x * x * x;
  if (x <= 1.0) return 2.0 * (1.0 - x) * (1.0 - x) * (1.0 - x);
  return 0.0;
}

double SpectralBandwidth(std::span<const double> chain) {
  const double n = static_cast<double>(chain.size());
  const double rule_of_thumb = 4.0 * std::pow(n / 100.0, 0.25);
  double bandwidth = rule_of_thumb;
  const double mean = Mean(chain);
  const double g0 = Autocovariance(chain, mean, 0);
  if (g0 > 0.0 && chain.size() > 2) {
    const double rho = std::clamp(Autocovariance(chain, mean, 1) / g0, -0.999, 0.999);
    const double alpha2 = 4.0 * rho * rho / std::pow(1.0 - rho, 4);
    bandwidth = std::max(bandwidth, 2.6614 * std::pow(alpha2 * n, 0.2));
  }
  return std::min(bandwidth, n - 1.0);
}

double LongRunVariance(std::span<const double> chain) {
  const double mean = Mean(chain);
  const double bandwidth = SpectralBandwidth(chain);
  double s = Autocovariance(chain, mean, 0);
  const auto max_lag = static_cast<std::size_t>(std::floor(bandwidth));
  for (std::size_t lag = 1; lag <= max_lag && lag < chain.size(); ++lag) {
    const double w = ParzenWeight(static_cast<double>(lag) / bandwidth);
    if (w == 0.0) break;
    s += 2.0 * w * Autocovariance(chain, mean, lag);
  }
  return s;
}

GewekeResult GewekeCd(std::span<const double> chain) {
  if (chain.size() < 100) throw ValidationError("geweke: chain shorter than 100");
  const std::size_t n = chain.size();
  const std::size_t n_a = n / 10;
  const std::size_t n_b = n / 2;
  const auto a = chain.first(n_a);
  const auto b = chain.last(n_b);
  const double var_a = std::max(LongRunVariance(a), 0.0);
  const double var_b = std::max(LongRunVariance(b), 0.0);
  const double denom = var_a / static_cast<double>(n_a) + var_b / static_cast<double>(n_b);
  if (!(denom > 0.0)) throw ValidationError("geweke: zero variance in both segments");
  GewekeResult out;
  out.z = (Mean(a) - Mean(b)) / std::sqrt(denom);
  out.p_value = std::erfc(std::abs(out.z) / std::sqrt(2.0));
  return out;
}

double InefficiencyFactor(std::span<const double> chain) {
  if (chain.size() < 100) throw ValidationError("inefficiency: chain shorter than 100");
  const double g0 = Autocovariance(chain, Mean(chain), 0);
  if (!(g0 > 0.0)) throw ValidationError("inefficiency: zero-variance chain");
  return std::max(0.0, LongRunVariance(chain) / g0);
}

double Percentile(std::span<const double> values, double q) {
  if (values.empty()) throw ValidationError("percentile of empty sequence");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

DiagnosticsRow SummarizeChain(std::string name, std::span<const double> chain) {
  if (chain.empty()) throw ValidationError("summary of empty chain '" + name + "'");
  DiagnosticsRow row;
  row.name = std::move(name);
  row.mean = Mean(chain);
  double ss = 0.0;
  for (double x : chain) ss += (x - row.mean) * (x - row.mean);
  row.sd = chain.size() > 1 ? std::sqrt(ss / static_cast<double>(chain.size() - 1)) : 0.0;
  row.lower95 = Percentile(chain, 0.025);
  row.upper95 = Percentile(chain, 0.975);
  row.cd = row.cd_p_value = row.ineff = kNaN;
  if (chain.size() >= 100 && ss > 0.0) {
    try {
      const auto cd = GewekeCd(chain);
      row.cd = cd.z;
      row.cd_p_value = cd.p_value;
    } catch (const ValidationError&) {
    }
    row.ineff = InefficiencyFactor(chain);
  }
  return row;
}

}  // namespace finres::tvpvar
