#pragma once

#include <span>
#include <vector>

#include "finres/data/panel.hpp"

namespace finres::data {

/// output[n] = ln(series[n+1]) − ln(series[n]). Throws DomainError naming the
/// first nonpositive index.
std::vector<double> LogDiff(std::span<const double> series);

/// Log-differences the named columns; the other columns lose their first
/// row so that every column stays aligned on the shortened date axis.
TimeSeriesPanel LogDiffColumns(const TimeSeriesPanel& panel, std::span<const std::string> names);

struct DailyObservation {
  Day date;
  double value;
};

struct MonthlySeries {
  std::vector<Month> dates;
  std::vector<double> values;
};

/// Arithmetic mean per calendar month. Input dates must be strictly
/// increasing; a calendar month without observations inside the span is an
/// error.
MonthlySeries AlignMonthly(std::span<const DailyObservation> observations);

/// (x − mean) / sample sd. Throws DomainError for zero variance.
std::vector<double> Standardize(std::span<const double> series);

}  // namespace finres::data
