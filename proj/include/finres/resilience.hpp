#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "finres/data/panel.hpp"
#include "finres/irf.hpp"

namespace finres::resilience {

/// D^n = max_m |Φ^m| − |Φ^n|.
std::vector<double> ShockGap(std::span<const double> path);

/// Σ D^n / (N · max|Φ|). Throws DomainError on an all-zero path.
double Intensity(std::span<const double> path);

struct DurationValue {
  double value = 0.0;
  /// Set when Σ D^n = 0; value is then 0.
  bool degenerate = false;
};

/// Σ n·D^n / Σ D^n. Throws DomainError on an all-zero path.
DurationValue Duration(std::span<const double> path);

struct ResilienceSeries {
  std::vector<data::Month> dates;
  std::string market;
  std::string shock;
  /// 0 when read back from CSV.
  int horizon = 0;
  std::vector<double> intensity;
  std::vector<double> duration;
  std::vector<bool> degenerate;
};

ResilienceSeries ComputeSeries(const irf::IrfSurface& surface, int response, int shock);
ResilienceSeries ComputeSeries(const irf::IrfSurface& surface, const std::string& response, const std::string& shock);

/// `date,market,shock,intensity,duration,degenerate`, degenerate as 0/1.
void WriteResilienceCsv(std::ostream& out, std::span<const ResilienceSeries> series);
/// Groups rows by (market, shock) in order of first appearance.
std::vector<ResilienceSeries> ReadResilienceCsv(std::istream& in, const std::string& source);

}  // namespace finres::resilience
