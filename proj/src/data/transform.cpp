#include "finres/data/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "finres/error.hpp"

namespace finres::data {

std::vector<double> LogDiff(std::span<const double> series) {
  if (series.size() < 2) throw ValidationError("log_diff needs at least two values");
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i] > 0.0)) {
      throw DomainError("log_diff: nonpositive value at index " + std::to_string(i));
    }
  }
  std::vector<double> out(series.size() - 1);
  for (std::size_t n = 0; n + 1 < series.size(); ++n) {
    out[n] = std::log(series[n + 1]) - std::log(series[n]);
  }
  return out;
}

TimeSeriesPanel LogDiffColumns(const TimeSeriesPanel& panel, std::span<const std::string> names) {
  const Eigen::Index rows = panel.rows() - 1;
  Eigen::MatrixXd values = panel.values().bottomRows(rows);
  for (const auto& name : names) {
    const Eigen::Index j = panel.ColumnIndex(name);
    const Eigen::VectorXd column = panel.values().col(j);
    std::vector<double> diffs;
    try {
      diffs = LogDiff(std::span<const double>(column.data(), static_cast<std::size_t>(column.size())));
    } catch (const DomainError& e) {
      throw DomainError("column '" + name + "': " + e.what());
    }
    values.col(j) = Eigen::Map<const Eigen::VectorXd>(diffs.data(), rows);
  }
  std::vector<Month> dates(panel.dates().begin() + 1, panel.dates().end());
  return TimeSeriesPanel(std::move(dates), panel.columns(), std::move(values));
}

MonthlySeries AlignMonthly(std::span<const DailyObservation> observations) {
  if (observations.empty()) throw ValidationError("align_monthly: no observations");
  for (std::size_t i = 1; i < observations.size(); ++i) {
    if (!(observations[i - 1].date < observations[i].date)) {
      throw ValidationError("align_monthly: input dates not strictly increasing at index " +
                            std::to_string(i));
    }
  }
  MonthlySeries out;
  std::size_t i = 0;
  while (i < observations.size()) {
    const Month month = observations[i].date.year() / observations[i].date.month();
    if (!out.dates.empty() && month != out.dates.back() + std::chrono::months{1}) {
      throw ValidationError("align_monthly: no observations in month following " +
                            FormatMonth(out.dates.back()));
    }
    double sum = 0.0;
    std::size_t count = 0;
    while (i < observations.size() &&
           observations[i].date.year() / observations[i].date.month() == month) {
      sum += observations[i].value;
      ++count;
      ++i;
    }
    out.dates.push_back(month);
    out.values.push_back(sum / static_cast<double>(count));
  }
  return out;
}

std::vector<double> Standardize(std::span<const double> series) {
  if (series.size() < 2) throw ValidationError("standardize needs at least two values");
  const double n = static_cast<double>(series.size());
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : series) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) throw DomainError("standardize: zero variance");
  std::vector<double> out(series.size());
  std::transform(series.begin(), series.end(), out.begin(),
                 [&](double x) { return (x - mean) / sd; });
  return out;
}

}  // namespace finres::data
