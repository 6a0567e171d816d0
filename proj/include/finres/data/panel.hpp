#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace finres::data {

using Month = std::chrono::year_month;
using Day = std::chrono::year_month_day;

/// "YYYY-MM"; anything else throws ValidationError.
Month ParseMonth(std::string_view text);
/// "YYYY-MM-DD"; must be a valid calendar date.
Day ParseDay(std::string_view text);
std::string FormatMonth(Month month);

/// Consecutive months starting at `first`.
std::vector<Month> MonthRange(Month first, std::size_t count);

/// Dated, column-named T×k matrix of finite observations at monthly
/// frequency. Immutable once built; the constructor enforces the invariants
/// (consecutive strictly increasing months, unique names, T ≥ 2, k ≥ 1,
/// finite values).
class TimeSeriesPanel {
 public:
  TimeSeriesPanel(std::vector<Month> dates, std::vector<std::string> columns,
                  Eigen::MatrixXd values);

  const std::vector<Month>& dates() const { return dates_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  /// Throws ValidationError naming the column when absent.
  Eigen::Index ColumnIndex(std::string_view name) const;
  bool HasColumn(std::string_view name) const;
  Eigen::VectorXd Column(std::string_view name) const;

  /// Sub-panel with the named columns in the given order.
  TimeSeriesPanel Select(std::span<const std::string> names) const;
  /// Rows [first, first + count).
  TimeSeriesPanel Slice(Eigen::Index first, Eigen::Index count) const;

 private:
  std::vector<Month> dates_;
  std::vector<std::string> columns_;
  Eigen::MatrixXd values_;
};

/// Reads a panel from CSV: header `date,<names...>`, then one row per date.
/// Dates are all `YYYY-MM`, or all `YYYY-MM-DD` (daily/weekly rows, averaged
/// to months column by column). Lines starting with '#' and blank lines are
/// skipped. Every column in `schema` must be present. Errors carry
/// `source:line` and the column name.
TimeSeriesPanel LoadPanel(std::istream& in, std::span<const std::string> schema = {},
                          std::string_view source = "<input>");
TimeSeriesPanel LoadPanelFile(const std::filesystem::path& path,
                              std::span<const std::string> schema = {});

/// Writes the CSV layout read by LoadPanel with shortest round-trip numbers,
/// so save → load is bit-identical. `comment` (if nonempty) becomes a
/// leading `# ...` line.
void SavePanel(std::ostream& out, const TimeSeriesPanel& panel, std::string_view comment = {});

}  // namespace finres::data
