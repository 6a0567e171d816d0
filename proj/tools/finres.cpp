#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "finres/cli/commands.hpp"
#include "finres/cli/config.hpp"
#include "finres/error.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::vector<std::string> settings;
  std::optional<std::string> input, seed, out, threads, draws, burn_in, lags, irf_horizon, gfevd_horizon,
      shock_volatility;
  bool to_normalized = false;
  bool irf_per_draw = false;
};

finres::cli::RunConfig BuildConfig(const Overrides& o) {
  finres::cli::RunConfig config;
  if (!o.config_path.empty()) finres::cli::ApplyConfigFile(config, o.config_path);
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw finres::ValidationError("--set expects key=value, got '" + s + "'");
    finres::cli::ApplySetting(config, s.substr(0, eq), s.substr(eq + 1));
  }
  const std::pair<const char*, const std::optional<std::string>*> flags[] = {
      {"input", &o.input},         {"seed", &o.seed},
      {"out", &o.out},             {"threads", &o.threads},
      {"draws", &o.draws},         {"burn_in", &o.burn_in},
      {"lags", &o.lags},           {"irf_horizon", &o.irf_horizon},
      {"gfevd_horizon", &o.gfevd_horizon}, {"shock_volatility", &o.shock_volatility},
  };
  for (const auto& [key, value] : flags) {
    if (*value) finres::cli::ApplySetting(config, key, **value);
  }
  if (o.to_normalized) finres::cli::ApplySetting(config, "to_normalization", "column");
  if (o.irf_per_draw) finres::cli::ApplySetting(config, "irf_per_draw", "true");
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finres: TVP-VAR resilience and connectedness toolkit"};
  app.set_version_flag("--version", std::string(finres::cli::Version()));
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "key = value configuration file");
  app.add_option("--set", o.settings, "override one setting, key=value (repeatable)");
  app.add_option("--input", o.input, "input panel CSV");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--draws", o.draws, "MCMC iterations including burn-in");
  app.add_option("--burn-in", o.burn_in, "MCMC burn-in iterations");
  app.add_option("--lags", o.lags, "VAR lag order");
  app.add_option("--irf-horizon", o.irf_horizon, "impulse response horizon N");
  app.add_option("--gfevd-horizon", o.gfevd_horizon, "GFEVD horizon H");
  app.add_option("--shock-volatility", o.shock_volatility, "averaged, time_varying or unit");
  app.add_flag("--to-normalized", o.to_normalized, "divide TO by the column sum of the shares");
  app.add_flag("--irf-per-draw", o.irf_per_draw, "average IRFs over stored posterior draws");

  std::string posterior = "posterior.txt", irf_csv = "irf.csv", resilience_csv, index = "intensity", artifact, kind;

  auto* describe = app.add_subcommand("describe", "descriptive statistics and ADF tests");
  auto* estimate = app.add_subcommand("estimate", "estimate a TVP-VAR by MCMC");
  auto* irf = app.add_subcommand("irf", "time-varying impulse responses from a posterior archive");
  irf->add_option("--posterior", posterior, "posterior archive")->capture_default_str();
  auto* resilience = app.add_subcommand("resilience", "resilience intensity and duration from an IRF surface");
  resilience->add_option("--irf", irf_csv, "IRF surface CSV")->capture_default_str();
  auto* connect = app.add_subcommand("connect", "TVP-VAR connectedness tables");
  connect->add_option("--resilience", resilience_csv, "resilience CSV (otherwise the input panel)");
  connect->add_option("--index", index, "intensity or duration")->capture_default_str();
  auto* mediate = app.add_subcommand("mediate", "two-step mediation regressions");
  auto* pipeline = app.add_subcommand("pipeline", "run every stage");
  auto* plotdata = app.add_subcommand("plotdata", "tidy CSV for external plotting");
  plotdata->add_option("--artifact", artifact, "artifact to convert")->required();
  plotdata->add_option("--kind", kind, "irf, resilience, dynamic, npdc or summary")->required();
  auto* synth = app.add_subcommand("synth", "write the synthetic demo dataset and config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      finres::cli::RunConfig seeded;
      if (o.seed) finres::cli::ApplySetting(seeded, "seed", *o.seed);
      finres::cli::RunSynth(o.out.value_or("."), seeded.seed);
      return 0;
    }
    const auto config = BuildConfig(o);
    if (describe->parsed()) finres::cli::RunDescribe(config);
    if (estimate->parsed()) finres::cli::RunEstimate(config);
    if (irf->parsed()) finres::cli::RunIrf(config, posterior);
    if (resilience->parsed()) finres::cli::RunResilience(config, irf_csv);
    if (connect->parsed()) finres::cli::RunConnect(config, resilience_csv, index);
    if (mediate->parsed()) finres::cli::RunMediate(config);
    if (pipeline->parsed()) finres::cli::RunPipeline(config);
    if (plotdata->parsed()) finres::cli::RunPlotdata(config, artifact, kind);
  } catch (const std::exception& e) {
    std::cerr << "finres: error: " << e.what() << '\n';
    return finres::cli::ExitCodeFor(e);
  }
  return 0;
}
