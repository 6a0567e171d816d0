#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace finres::data {

/// Significance levels in the order used by every array below: 1%, 5%, 10%.
inline constexpr std::array<double, 3> kAdfLevels = {0.01, 0.05, 0.10};

struct AdfOptions {
  int max_lag = 12;
  bool include_trend = false;
};

struct AdfResult {
  double statistic = 0.0;
  int chosen_lag = 0;
  /// Observations in the final regression; the critical values use it.
  int observations = 0;
  /// Indexed like kAdfLevels; strictly increasing.
  std::array<double, 3> critical_values{};
  std::array<bool, 3> reject_at{};
};

/// MacKinnon (2010) response-surface critical values for the t-ratio with
/// intercept (and trend when requested) at `observations`.
std::array<double, 3> AdfCriticalValues(int observations, bool include_trend);

/// Augmented Dickey–Fuller t-ratio. Lag order is chosen by minimum AIC over
/// 0..max_lag on a common sample; the chosen model is then refit on every
/// usable observation. Throws ValidationError when length ≤ max_lag + 10,
/// NumericalError when the regression is singular.
AdfResult AdfTest(std::span<const double> series, const AdfOptions& options = {});

struct DescriptiveStats {
  double mean = 0.0;
  double sd = 0.0;
  double skewness = 0.0;
  /// Excess kurtosis (normal → 0).
  double kurtosis = 0.0;
  /// NaN when the series is too short for the test.
  double adf_stat = 0.0;
  int adf_lag = 0;
  bool adf_reject_1pct = false;
  bool adf_reject_5pct = false;
  bool adf_reject_10pct = false;
};

/// Sample moments (sd with divisor T−1, unadjusted standardized third and
/// fourth central moments) plus an ADF test with default options. The ADF
/// lag ceiling is lowered for short series; below 12 points it is skipped.
DescriptiveStats Describe(std::span<const double> series);

/// "***", "**", "*" or "" from the ADF rejections.
std::string AdfStars(const DescriptiveStats& stats);

struct NamedStats {
  std::string name;
  DescriptiveStats stats;
};

/// CSV `series,mean,sd,skewness,kurtosis,adf,lag`; the adf cell carries stars.
void WriteDescribeCsv(std::ostream& out, const std::vector<NamedStats>& rows);

}  // namespace finres::data
