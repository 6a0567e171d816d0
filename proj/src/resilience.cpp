#include "finres/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "finres/error.hpp"
#include "finres/format.hpp"

namespace finres::resilience {

namespace {

double PeakMagnitude(std::span<const double> path) {
  if (path.empty()) throw ValidationError("resilience: empty IRF path");
  double peak = 0.0;
  for (double v : path) {
    if (!std::isfinite(v)) throw ValidationError("resilience: non-finite IRF value");
    peak = std::max(peak, std::abs(v));
  }
  return peak;
}

double RequirePeak(std::span<const double> path) {
  const double peak = PeakMagnitude(path);
  if (peak == 0.0) throw DomainError("resilience: all-zero IRF path is undefined");
  return peak;
}

}  // namespace

std::vector<double> ShockGap(std::span<const double> path) {
  const double peak = PeakMagnitude(path);
  std::vector<double> gap(path.size());
  for (std::size_t n = 0; n < path.size(); ++n) gap[n] = peak - std::abs(path[n]);
  return gap;
}

double Intensity(std::span<const double> path) {
  const double peak = RequirePeak(path);
  double sum = 0.0;
  for (double d : ShockGap(path)) sum += d;
  return sum / (static_cast<double>(path.size()) * peak);
}

DurationValue Duration(std::span<const double> path) {
  RequirePeak(path);
  const auto gap = ShockGap(path);
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n < gap.size(); ++n) {
    weighted += static_cast<double>(n + 1) * gap[n];
    total += gap[n];
  }
  if (total == 0.0) return {0.0, true};
  return {weighted / total, false};
}

ResilienceSeries ComputeSeries(const irf::IrfSurface& surface, int response, int shock) {
  if (response < 0 || response >= surface.k() || shock < 0 || shock >= surface.k()) {
    throw ValidationError("resilience: surface has no such response/shock pair");
  }
  ResilienceSeries out;
  out.dates = surface.dates();
  out.market = surface.variables()[static_cast<std::size_t>(response)];
  out.shock = surface.variables()[static_cast<std::size_t>(shock)];
  out.horizon = surface.horizon();
  for (int t = 0; t < surface.periods(); ++t) {
    const auto path = surface.Path(t, response, shock);
    try {
      out.intensity.push_back(Intensity(path));
      const auto d = Duration(path);
      out.duration.push_back(d.value);
      out.degenerate.push_back(d.degenerate);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at " + data::FormatMonth(out.dates[static_cast<std::size_t>(t)]));
    }
  }
  return out;
}

ResilienceSeries ComputeSeries(const irf::IrfSurface& surface, const std::string& response, const std::string& shock) {
  return ComputeSeries(surface, surface.VariableIndex(response), surface.VariableIndex(shock));
}

void WriteResilienceCsv(std::ostream& out, std::span<const ResilienceSeries> series) {
  out << "date,market,shock,intensity,duration,degenerate\n";
  for (const auto& s : series) {
    for (std::size_t t = 0; t < s.dates.size(); ++t) {
      out << data::FormatMonth(s.dates[t]) << ',' << s.market << ',' << s.shock << ',' << FormatDouble(s.intensity[t])
          << ',' << FormatDouble(s.duration[t]) << ',' << (s.degenerate[t] ? 1 : 0) << '\n';
    }
  }
}

std::vector<ResilienceSeries> ReadResilienceCsv(std::istream& in, const std::string& source) {
  std::vector<ResilienceSeries> out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto where = source + ":" + std::to_string(line_no);
    const auto cells = SplitCsvLine(trimmed);
    if (!header_seen) {
      if (cells != std::vector<std::string>{"date", "market", "shock", "intensity", "duration", "degenerate"}) {
        throw ValidationError(where + ": expected header date,market,shock,intensity,duration,degenerate");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 6) throw ValidationError(where + ": expected 6 fields");
    data::Month month;
    try {
      month = data::ParseMonth(cells[0]);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    const auto intensity = ParseDouble(cells[3]);
    const auto duration = ParseDouble(cells[4]);
    if (!intensity || !duration) throw ValidationError(where + ": non-numeric index value");
    if (cells[5] != "0" && cells[5] != "1") throw ValidationError(where + ": degenerate flag must be 0 or 1");
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const ResilienceSeries& s) { return s.market == cells[1] && s.shock == cells[2]; });
    if (it == out.end()) {
      out.push_back({});
      it = out.end() - 1;
      it->market = cells[1];
      it->shock = cells[2];
    }
    if (!it->dates.empty() && month <= it->dates.back()) throw ValidationError(where + ": dates must increase");
    it->dates.push_back(month);
    it->intensity.push_back(*intensity);
    it->duration.push_back(*duration);
    it->degenerate.push_back(cells[5] == "1");
  }
  if (!header_seen) throw ValidationError(source + ": missing header");
  return out;
}

}  // namespace finres::resilience
