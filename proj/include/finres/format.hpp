#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finres {

/// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

/// Fixed-point text with `digits` decimals (printf "%.*f").
std::string FormatFixed(double value, int digits);

/// Parses a whole cell as a double; nullopt on trailing garbage or empty input.
std::optional<double> ParseDouble(std::string_view text);

std::string_view Trim(std::string_view text);

std::vector<std::string> SplitCsvLine(std::string_view line);

std::string Join(const std::vector<std::string>& parts, std::string_view separator);

}  // namespace finres
