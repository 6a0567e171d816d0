#include "finres/data/panel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "finres/data/transform.hpp"
#include "finres/error.hpp"
#include "finres/format.hpp"

namespace finres::data {

namespace {

bool AllDigits(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(),
                                      [](char c) { return c >= '0' && c <= '9'; });
}

int ToInt(std::string_view text) {
  int value = 0;
  for (char c : text) value = value * 10 + (c - '0');
  return value;
}

std::string Location(std::string_view source, long line) {
  return std::string(source) + ":" + std::to_string(line);
}

}  // namespace

Month ParseMonth(std::string_view text) {
  text = Trim(text);
  if (text.size() != 7 || text[4] != '-' || !AllDigits(text.substr(0, 4)) ||
      !AllDigits(text.substr(5, 2))) {
    throw ValidationError("unparseable month '" + std::string(text) + "' (expected YYYY-MM)");
  }
  const Month month{std::chrono::year{ToInt(text.substr(0, 4))},
                    std::chrono::month{static_cast<unsigned>(ToInt(text.substr(5, 2)))}};
  if (!month.ok()) throw ValidationError("invalid month '" + std::string(text) + "'");
  return month;
}

Day ParseDay(std::string_view text) {
  text = Trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !AllDigits(text.substr(0, 4)) ||
      !AllDigits(text.substr(5, 2)) || !AllDigits(text.substr(8, 2))) {
    throw ValidationError("unparseable date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  }
  const Day day{std::chrono::year{ToInt(text.substr(0, 4))},
                std::chrono::month{static_cast<unsigned>(ToInt(text.substr(5, 2)))},
                std::chrono::day{static_cast<unsigned>(ToInt(text.substr(8, 2)))}};
  if (!day.ok()) throw ValidationError("invalid calendar date '" + std::string(text) + "'");
  return day;
}

std::string FormatMonth(Month month) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u", static_cast<int>(month.year()),
                static_cast<unsigned>(month.month()));
  return buffer;
}

std::vector<Month> MonthRange(Month first, std::size_t count) {
  std::vector<Month> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(first + std::chrono::months{static_cast<int>(i)});
  return out;
}

TimeSeriesPanel::TimeSeriesPanel(std::vector<Month> dates, std::vector<std::string> columns,
                                 Eigen::MatrixXd values)
    : dates_(std::move(dates)), columns_(std::move(columns)), values_(std::move(values)) {
  if (values_.rows() < 2) throw ValidationError("panel needs at least two dates");
  if (values_.cols() < 1) throw ValidationError("panel needs at least one column");
  if (static_cast<Eigen::Index>(dates_.size()) != values_.rows()) {
    throw ValidationError("panel date count does not match value rows");
  }
  if (static_cast<Eigen::Index>(columns_.size()) != values_.cols()) {
    throw ValidationError("panel column count does not match value columns");
  }
  std::set<std::string> seen;
  for (const auto& name : columns_) {
    if (name.empty()) throw ValidationError("empty column name");
    if (!seen.insert(name).second) throw ValidationError("duplicate column name '" + name + "'");
  }
  for (std::size_t t = 1; t < dates_.size(); ++t) {
    if (dates_[t] != dates_[t - 1] + std::chrono::months{1}) {
      throw ValidationError("dates not consecutive months at " + FormatMonth(dates_[t - 1]) +
                            " -> " + FormatMonth(dates_[t]));
    }
  }
  if (!values_.allFinite()) throw ValidationError("panel contains non-finite values");
}

Eigen::Index TimeSeriesPanel::ColumnIndex(std::string_view name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw ValidationError("unknown column '" + std::string(name) + "'");
  return static_cast<Eigen::Index>(it - columns_.begin());
}

bool TimeSeriesPanel::HasColumn(std::string_view name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

Eigen::VectorXd TimeSeriesPanel::Column(std::string_view name) const {
  return values_.col(ColumnIndex(name));
}

TimeSeriesPanel TimeSeriesPanel::Select(std::span<const std::string> names) const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = Column(names[j]);
  return TimeSeriesPanel(dates_, std::vector<std::string>(names.begin(), names.end()), std::move(out));
}

TimeSeriesPanel TimeSeriesPanel::Slice(Eigen::Index first, Eigen::Index count) const {
  if (first < 0 || count < 0 || first + count > rows()) throw ValidationError("slice out of range");
  std::vector<Month> dates(dates_.begin() + first, dates_.begin() + first + count);
  return TimeSeriesPanel(std::move(dates), columns_, values_.middleRows(first, count));
}

TimeSeriesPanel LoadPanel(std::istream& in, std::span<const std::string> schema,
                          std::string_view source) {
  std::string line;
  long line_no = 0;
  std::vector<std::string> header;
  long header_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    header = SplitCsvLine(trimmed);
    header_line = line_no;
    break;
  }
  if (header.empty()) throw ValidationError(std::string(source) + ": missing header row");
  // Tolerate a UTF-8 byte-order mark.
  if (header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  if (header[0] != "date") {
    throw ValidationError(Location(source, header_line) + ": first header cell must be 'date'");
  }
  std::vector<std::string> columns(header.begin() + 1, header.end());
  if (columns.empty()) throw ValidationError(Location(source, header_line) + ": no series columns");
  {
    std::set<std::string> seen;
    for (const auto& name : columns) {
      if (name.empty()) throw ValidationError(Location(source, header_line) + ": empty column name");
      if (!seen.insert(name).second) {
        throw ValidationError(Location(source, header_line) + ": duplicate column name '" + name + "'");
      }
    }
  }
  for (const auto& expected : schema) {
    if (std::find(columns.begin(), columns.end(), expected) == columns.end()) {
      throw ValidationError(std::string(source) + ": missing expected column '" + expected + "'");
    }
  }

  std::vector<std::string> date_cells;
  std::vector<long> date_lines;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto cells = SplitCsvLine(trimmed);
    if (cells.size() != header.size()) {
      throw ValidationError(Location(source, line_no) + ": malformed row, expected " +
                            std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()));
    }
    std::vector<double> row(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const auto value = ParseDouble(cells[j + 1]);
      if (!value || !std::isfinite(*value)) {
        throw ValidationError(Location(source, line_no) + ", column '" + columns[j] +
                              "': non-numeric cell '" + cells[j + 1] + "'");
      }
      row[j] = *value;
    }
    date_cells.push_back(cells[0]);
    date_lines.push_back(line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(std::string(source) + ": no data rows");

  const bool daily = date_cells.front().size() == 10;
  if (!daily) {
    std::vector<Month> dates;
    dates.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Month month;
      try {
        month = ParseMonth(date_cells[r]);
      } catch (const ValidationError& e) {
        throw ValidationError(Location(source, date_lines[r]) + ", column 'date': " + e.what());
      }
      if (!dates.empty()) {
        if (month == dates.back()) {
          throw ValidationError(Location(source, date_lines[r]) + ": duplicate date " + FormatMonth(month));
        }
        if (month < dates.back()) {
          throw ValidationError(Location(source, date_lines[r]) + ": dates out of order at " +
                                FormatMonth(month));
        }
        if (month != dates.back() + std::chrono::months{1}) {
          throw ValidationError(Location(source, date_lines[r]) + ": missing month(s) before " +
                                FormatMonth(month));
        }
      }
      dates.push_back(month);
    }
    Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t j = 0; j < columns.size(); ++j) values(r, j) = rows[r][j];
    }
    return TimeSeriesPanel(std::move(dates), std::move(columns), std::move(values));
  }

  std::vector<Day> days;
  days.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Day day;
    try {
      day = ParseDay(date_cells[r]);
    } catch (const ValidationError& e) {
      throw ValidationError(Location(source, date_lines[r]) + ", column 'date': " + e.what());
    }
    if (!days.empty() && day <= days.back()) {
      throw ValidationError(Location(source, date_lines[r]) + (day == days.back() ? ": duplicate date " : ": dates out of order at ") +
                            std::string(Trim(date_cells[r])));
    }
    days.push_back(day);
  }
  std::vector<Month> months;
  Eigen::MatrixXd values;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    std::vector<DailyObservation> observations;
    observations.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) observations.push_back({days[r], rows[r][j]});
    MonthlySeries monthly = AlignMonthly(observations);
    if (j == 0) {
      months = monthly.dates;
      values.resize(static_cast<Eigen::Index>(months.size()), static_cast<Eigen::Index>(columns.size()));
    }
    for (std::size_t r = 0; r < months.size(); ++r) values(r, j) = monthly.values[r];
  }
  return TimeSeriesPanel(std::move(months), std::move(columns), std::move(values));
}

TimeSeriesPanel LoadPanelFile(const std::filesystem::path& path, std::span<const std::string> schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return LoadPanel(in, schema, path.string());
}

void SavePanel(std::ostream& out, const TimeSeriesPanel& panel, std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "date";
  for (const auto& name : panel.columns()) out << ',' << name;
  out << '\n';
  for (Eigen::Index t = 0; t < panel.rows(); ++t) {
    out << FormatMonth(panel.dates()[t]);
    for (Eigen::Index j = 0; j < panel.cols(); ++j) out << ',' << FormatDouble(panel.values()(t, j));
    out << '\n';
  }
  if (!out) throw IoError("failed writing panel");
}

}  // namespace finres::data
