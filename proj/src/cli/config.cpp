#include "finres/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "finres/cli/digest.hpp"
#include "finres/error.hpp"
#include "finres/format.hpp"

namespace finres::cli {

std::string_view Version() { return FINRES_VERSION; }

namespace {

std::vector<std::string> ParseList(std::string_view value) {
  std::vector<std::string> out;
  if (Trim(value).empty()) return out;
  for (const auto& item : SplitCsvLine(value)) {
    const auto trimmed = std::string(Trim(item));
    if (trimmed.empty()) throw ValidationError("empty name in list '" + std::string(value) + "'");
    out.push_back(trimmed);
  }
  return out;
}

template <typename Int>
Int ParseInteger(std::string_view key, std::string_view value) {
  Int out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("setting '" + std::string(key) + "': expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("setting '" + std::string(key) + "': expected true or false, got '" + std::string(value) + "'");
}

std::string_view VolatilityName(irf::ShockVolatility v) {
  switch (v) {
    case irf::ShockVolatility::kTimeAveraged: return "averaged";
    case irf::ShockVolatility::kTimeVarying: return "time_varying";
    case irf::ShockVolatility::kUnit: return "unit";
  }
  return "averaged";
}

}  // namespace

void ApplySetting(RunConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = Trim(raw);
  const std::string k(key);
  if (k == "input") {
    c.input = value;
  } else if (k == "markets") {
    c.markets = ParseList(value);
  } else if (k == "shock") {
    c.shock = value;
  } else if (k == "cpu") {
    c.cpu = value;
  } else if (k == "mediators") {
    c.mediators = ParseList(value);
  } else if (k == "sentiment") {
    c.sentiment = ParseList(value);
  } else if (k == "sentiment_name") {
    c.sentiment_name = value;
  } else if (k == "log_diff") {
    c.log_diff = ParseList(value);
  } else if (k == "total_market") {
    c.total_market = ParseBool(key, value);
  } else if (k == "total_name") {
    c.total_name = value;
  } else if (k == "variables") {
    c.variables = ParseList(value);
  } else if (k == "outcomes") {
    c.outcomes = ParseList(value);
  } else if (k == "lags") {
    c.lags = ParseInteger<int>(key, value);
  } else if (k == "draws") {
    c.draws = ParseInteger<int>(key, value);
  } else if (k == "burn_in") {
    c.burn_in = ParseInteger<int>(key, value);
  } else if (k == "thin") {
    c.thin = ParseInteger<int>(key, value);
  } else if (k == "stored_path_draws") {
    c.stored_path_draws = ParseInteger<int>(key, value);
  } else if (k == "seed") {
    c.seed = ParseInteger<std::uint64_t>(key, value);
  } else if (k == "irf_horizon") {
    c.irf_horizon = ParseInteger<int>(key, value);
  } else if (k == "gfevd_horizon") {
    c.gfevd_horizon = ParseInteger<int>(key, value);
  } else if (k == "shock_volatility") {
    if (value == "averaged") {
      c.shock_volatility = irf::ShockVolatility::kTimeAveraged;
    } else if (value == "time_varying") {
      c.shock_volatility = irf::ShockVolatility::kTimeVarying;
    } else if (value == "unit") {
      c.shock_volatility = irf::ShockVolatility::kUnit;
    } else {
      throw ValidationError("setting 'shock_volatility': expected averaged, time_varying or unit");
    }
  } else if (k == "irf_per_draw") {
    c.irf_per_draw = ParseBool(key, value);
  } else if (k == "to_normalization") {
    if (value == "plain") {
      c.to_convention = connectedness::ToConvention::kPlainSum;
    } else if (value == "column") {
      c.to_convention = connectedness::ToConvention::kColumnNormalized;
    } else {
      throw ValidationError("setting 'to_normalization': expected plain or column");
    }
  } else if (k == "out") {
    c.out = value;
  } else if (k == "threads") {
    c.threads = ParseInteger<int>(key, value);
  } else {
    throw ValidationError("unknown setting '" + k + "'");
  }
}

void ApplyConfigText(RunConfig& config, std::istream& in, std::string_view source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    const auto where = std::string(source) + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ValidationError(where + ": expected key = value");
    try {
      ApplySetting(config, Trim(trimmed.substr(0, eq)), trimmed.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
}

void ApplyConfigFile(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  const std::string before = config.input;
  ApplyConfigText(config, in, path.string());
  if (config.input != before && !config.input.empty() && std::filesystem::path(config.input).is_relative()) {
    config.input = (path.parent_path() / config.input).lexically_normal().string();
  }
}

std::map<std::string, std::string> CanonicalSettings(const RunConfig& c) {
  return {
      {"markets", Join(c.markets, ",")},
      {"shock", c.shock},
      {"cpu", c.cpu},
      {"mediators", Join(c.mediators, ",")},
      {"sentiment", Join(c.sentiment, ",")},
      {"sentiment_name", c.sentiment_name},
      {"log_diff", Join(c.log_diff, ",")},
      {"total_market", c.total_market ? "true" : "false"},
      {"total_name", c.total_name},
      {"variables", Join(c.variables, ",")},
      {"outcomes", Join(c.outcomes, ",")},
      {"lags", std::to_string(c.lags)},
      {"draws", std::to_string(c.draws)},
      {"burn_in", std::to_string(c.burn_in)},
      {"thin", std::to_string(c.thin)},
      {"stored_path_draws", std::to_string(c.stored_path_draws)},
      {"seed", std::to_string(c.seed)},
      {"irf_horizon", std::to_string(c.irf_horizon)},
      {"gfevd_horizon", std::to_string(c.gfevd_horizon)},
      {"shock_volatility", std::string(VolatilityName(c.shock_volatility))},
      {"irf_per_draw", c.irf_per_draw ? "true" : "false"},
      {"to_normalization", c.to_convention == connectedness::ToConvention::kPlainSum ? "plain" : "column"},
  };
}

std::string ConfigHash(const RunConfig& config) {
  std::ostringstream text;
  for (const auto& [key, value] : CanonicalSettings(config)) text << key << '=' << value << '\n';
  if (!config.input.empty()) text << "input_sha256=" << Sha256File(config.input) << '\n';
  return Sha256Hex(text.str());
}

void ValidateRanges(const RunConfig& c) {
  const auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
  };
  require(c.lags >= 1, "lags must be at least 1");
  require(c.draws >= 1, "draws must be positive");
  require(c.burn_in >= 0, "burn_in must be nonnegative");
  require(c.draws > c.burn_in, "draws must exceed burn_in");
  require(c.thin >= 1, "thin must be at least 1");
  require(c.stored_path_draws >= 0, "stored_path_draws must be nonnegative");
  require(c.irf_horizon >= 1, "irf_horizon must be at least 1");
  require(c.gfevd_horizon >= 1, "gfevd_horizon must be at least 1");
  require(c.threads >= 1, "threads must be at least 1");
}

void WriteConfig(std::ostream& out, const RunConfig& config) {
  if (!config.input.empty()) out << "input = " << config.input << '\n';
  for (const auto& [key, value] : CanonicalSettings(config)) out << key << " = " << value << '\n';
}

}  // namespace finres::cli
