#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "finres/connectedness.hpp"
#include "finres/irf.hpp"

namespace finres::cli {

std::string_view Version();

/// Settings shared by every subcommand. Loaded from a flat `key = value`
/// file; command-line flags are applied afterwards and win.
struct RunConfig {
  std::string input;
  std::vector<std::string> markets;
  std::string shock;
  std::string cpu;
  std::vector<std::string> mediators;
  /// Columns whose first principal component becomes an extra mediator.
  std::vector<std::string> sentiment;
  std::string sentiment_name = "Sentiment";
  /// Columns log-differenced before anything else; all others lose their
  /// first row so the panel stays aligned.
  std::vector<std::string> log_diff;
  /// Adds the first principal component of the markets as a market.
  bool total_market = true;
  std::string total_name = "Total";
  /// Model variables for `estimate`, `connect` and `describe`.
  std::vector<std::string> variables;
  /// Outcome columns for `mediate`.
  std::vector<std::string> outcomes;

  int lags = 1;
  int draws = 11000;
  int burn_in = 1000;
  int thin = 1;
  int stored_path_draws = 200;
  std::uint64_t seed = 20240101;
  int irf_horizon = irf::kDefaultHorizon;
  int gfevd_horizon = 12;
  irf::ShockVolatility shock_volatility = irf::ShockVolatility::kTimeAveraged;
  bool irf_per_draw = false;
  connectedness::ToConvention to_convention = connectedness::ToConvention::kPlainSum;

  std::string out = "finres_out";
  int threads = 1;
};

/// Sets one key from its text value. Throws ValidationError for unknown keys
/// or malformed values.
void ApplySetting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; blank lines and `#` comments are ignored.
void ApplyConfigText(RunConfig& config, std::istream& in, std::string_view source);
/// A relative `input` in the file is resolved against the file's directory.
void ApplyConfigFile(RunConfig& config, const std::filesystem::path& path);

/// Every key except `out`, `threads` and `input`, as canonical text.
std::map<std::string, std::string> CanonicalSettings(const RunConfig& config);

/// SHA-256 over the sorted canonical settings plus the digest of the input
/// file contents (when an input is configured), so the hash does not depend
/// on paths or on the machine.
std::string ConfigHash(const RunConfig& config);

/// Range checks that need no data: lags ≥ 1, draws > burn_in ≥ 0, etc.
void ValidateRanges(const RunConfig& config);

/// Canonical `key = value` text accepted by ApplyConfigText.
void WriteConfig(std::ostream& out, const RunConfig& config);

}  // namespace finres::cli
