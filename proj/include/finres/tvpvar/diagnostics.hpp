#pragma once

#include <span>
#include <string>
#include <vector>

namespace finres::tvpvar {

/// Parzen lag window on x = lag / bandwidth.
double ParzenWeight(double x);

/// Lag-window bandwidth: max(4·(n/100)^¼, Andrews' AR(1) plug-in for the
/// Parzen kernel), at most n − 1.
double SpectralBandwidth(std::span<const double> chain);

/// Long-run variance γ₀ + 2 Σ_s w(s/B) γ_s (2π × spectral density at zero).
double LongRunVariance(std::span<const double> chain);

struct GewekeResult {
  double z = 0.0;
  /// Two-sided normal p-value of z.
  double p_value = 1.0;
};

/// Geweke convergence diagnostic: first 10% against last 50% of the chain,
/// each variance from LongRunVariance. Throws ValidationError for chains
/// shorter than 100 or with zero variance in both segments.
GewekeResult GewekeCd(std::span<const double> chain);

/// 1 + 2 Σ_s w(s/B) ρ̂_s, floored at 0. Throws ValidationError for chains
/// shorter than 100 or with zero variance.
double InefficiencyFactor(std::span<const double> chain);

/// Linear-interpolation percentile, q in [0, 1] (R type 7).
double Percentile(std::span<const double> values, double q);

struct DiagnosticsRow {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double lower95 = 0.0;
  double upper95 = 0.0;
  double cd = 0.0;
  double cd_p_value = 1.0;
  double ineff = 0.0;
};

/// Mean, sd, equal-tailed 95% interval, Geweke CD and inefficiency. A
/// constant chain reports sd 0 and NaN diagnostics; chains shorter than 100
/// report NaN diagnostics.
DiagnosticsRow SummarizeChain(std::string name, std::span<const double> chain);

}  // namespace finres::tvpvar
