#include "finres/data/describe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "finres/error.hpp"
#include "finres/format.hpp"
#include "finres/linalg.hpp"

namespace finres::data {

namespace {

// MacKinnon (2010), "Critical Values for Cointegration Tests", Table 2, N = 1.
// cv(T) = b_inf + b1/T + b2/T^2 + b3/T^3
constexpr double kConstant[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.2340, -40.040},
    {-2.56677, -1.5384, -2.8090, 0.0},
};
constexpr double kConstantTrend[3][4] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.0360, -45.374},
    {-3.12705, -3.0778, -4.9375, 0.0},
};

struct AdfFit {
  double statistic;
  double aic;
  int observations;
};

AdfFit FitAdf(std::span<const double> y, const std::vector<double>& dy, int lag, int first,
              bool trend) {
  // Rows t = first .. dy.size()-1, regress dy[t] on [1, (t), y[t], dy[t-1..t-lag]].
  const int nobs = static_cast<int>(dy.size()) - first;
  const int params = 2 + (trend ? 1 : 0) + lag;
  Eigen::MatrixXd x(nobs, params);
  Eigen::VectorXd target(nobs);
  for (int r = 0; r < nobs; ++r) {
    const int t = first + r;
    int c = 0;
    x(r, c++) = 1.0;
    if (trend) x(r, c++) = static_cast<double>(t + 1);
    x(r, c++) = y[static_cast<std::size_t>(t)];
    for (int i = 1; i <= lag; ++i) x(r, c++) = dy[static_cast<std::size_t>(t - i)];
    target[r] = dy[static_cast<std::size_t>(t)];
  }
  const auto fit = linalg::SolveLeastSquares(x, target);
  const int level = trend ? 2 : 1;
  const double dof = static_cast<double>(nobs - params);
  const double s2 = fit.ssr / dof;
  const double se = std::sqrt(s2 * fit.xtx_inverse(level, level));
  const double ssr = std::max(fit.ssr, std::numeric_limits<double>::min());
  return {fit.coefficients[level] / se,
          nobs * std::log(ssr / nobs) + 2.0 * params, nobs};
}

}  // namespace

std::array<double, 3> AdfCriticalValues(int observations, bool include_trend) {
  const auto& table = include_trend ? kConstantTrend : kConstant;
  const double inv = 1.0 / static_cast<double>(observations);
  std::array<double, 3> out{};
  for (int level = 0; level < 3; ++level) {
    const auto& b = table[level];
    out[level] = b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
  }
  return out;
}

AdfResult AdfTest(std::span<const double> series, const AdfOptions& options) {
  if (options.max_lag < 0) throw ValidationError("adf: max_lag must be nonnegative");
  if (static_cast<int>(series.size()) <= options.max_lag + 10) {
    throw ValidationError("adf: series too short (length " + std::to_string(series.size()) +
                          ", max_lag " + std::to_string(options.max_lag) + ")");
  }
  for (double v : series) {
    if (!std::isfinite(v)) throw ValidationError("adf: non-finite value");
  }
  std::vector<double> dy(series.size() - 1);
  for (std::size_t t = 0; t + 1 < series.size(); ++t) dy[t] = series[t + 1] - series[t];

  int best_lag = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int lag = 0; lag <= options.max_lag; ++lag) {
    const auto fit = FitAdf(series, dy, lag, options.max_lag, options.include_trend);
    if (fit.aic < best_aic) {
      best_aic = fit.aic;
      best_lag = lag;
    }
  }
  const auto final_fit = FitAdf(series, dy, best_lag, best_lag, options.include_trend);

  AdfResult result;
  result.statistic = final_fit.statistic;
  result.chosen_lag = best_lag;
  result.observations = final_fit.observations;
  result.critical_values = AdfCriticalValues(final_fit.observations, options.include_trend);
  for (int level = 0; level < 3; ++level) {
    result.reject_at[level] = result.statistic < result.critical_values[level];
  }
  return result;
}

DescriptiveStats Describe(std::span<const double> series) {
  if (series.size() < 2) throw ValidationError("describe needs at least two values");
  const double n = static_cast<double>(series.size());
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : series) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  DescriptiveStats out;
  out.mean = mean;
  out.sd = std::sqrt(m2 / (n - 1.0));
  if (m2 > 0.0) {
    const double var = m2 / n;
    out.skewness = (m3 / n) / std::pow(var, 1.5);
    out.kurtosis = (m4 / n) / (var * var) - 3.0;
  }

  out.adf_stat = std::numeric_limits<double>::quiet_NaN();
  const int max_lag = std::min(12, (static_cast<int>(series.size()) - 12) / 2);
  if (max_lag >= 0 && m2 > 0.0) {
    try {
      const auto adf = AdfTest(series, {.max_lag = max_lag, .include_trend = false});
      out.adf_stat = adf.statistic;
      out.adf_lag = adf.chosen_lag;
      out.adf_reject_1pct = adf.reject_at[0];
      out.adf_reject_5pct = adf.reject_at[1];
      out.adf_reject_10pct = adf.reject_at[2];
    } catch (const NumericalError&) {
      // Singular ADF regression (e.g. a deterministic ramp): leave NaN.
    }
  }
  return out;
}

std::string AdfStars(const DescriptiveStats& stats) {
  if (stats.adf_reject_1pct) return "***";
  if (stats.adf_reject_5pct) return "**";
  if (stats.adf_reject_10pct) return "*";
  return "";
}

void WriteDescribeCsv(std::ostream& out, const std::vector<NamedStats>& rows) {
  out << "series,mean,sd,skewness,kurtosis,adf,lag\n";
  for (const auto& row : rows) {
    const auto& s = row.stats;
    out << row.name << ',' << FormatFixed(s.mean, 4) << ',' << FormatFixed(s.sd, 4) << ','
        << FormatFixed(s.skewness, 4) << ',' << FormatFixed(s.kurtosis, 4) << ','
        << FormatFixed(s.adf_stat, 4) << AdfStars(s) << ',' << s.adf_lag << '\n';
  }
}

}  // namespace finres::data
