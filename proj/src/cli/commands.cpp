#include "finres/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "finres/cli/artifacts.hpp"
#include "finres/connectedness.hpp"
#include "finres/data/describe.hpp"
#include "finres/data/panel.hpp"
#include "finres/data/transform.hpp"
#include "finres/error.hpp"
#include "finres/format.hpp"
#include "finres/irf.hpp"
#include "finres/parallel.hpp"
#include "finres/resilience.hpp"
#include "finres/rng.hpp"
#include "finres/stats/mediation.hpp"
#include "finres/stats/pca.hpp"
#include "finres/tvpvar/archive.hpp"
#include "finres/tvpvar/sampler.hpp"
#include "finres/tvpvar/simulate.hpp"

namespace finres::cli {

namespace {

using data::TimeSeriesPanel;

void RunStages(const RunConfig& config, const std::function<void(OutputDirectory&, std::string&)>& stages) {
  ValidateRanges(config);
  SetThreadCount(config.threads);
  OutputDirectory out(config.out, ConfigHash(config));
  std::string stage = "setup";
  try {
    stages(out, stage);
  } catch (const std::exception& e) {
    out.WriteManifest(stage, e.what());
    throw;
  }
  out.WriteManifest();
}

std::string FileStem(const std::string& name) {
  std::string out = name;
  for (auto& ch : out) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '-' ||
                    ch == '_';
    if (!ok) ch = '_';
  }
  return out;
}

void AppendUnique(std::vector<std::string>& list, const std::vector<std::string>& items) {
  for (const auto& item : items) {
    if (!item.empty() && std::find(list.begin(), list.end(), item) == list.end()) list.push_back(item);
  }
}

void AppendUnique(std::vector<std::string>& list, const std::string& item) { AppendUnique(list, std::vector{item}); }

std::span<const double> AsSpan(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

std::vector<double> ToVector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Loads the input with every named column required, then log-differences
/// the configured columns.
TimeSeriesPanel LoadPrepared(const RunConfig& config, const std::vector<std::string>& required) {
  if (config.input.empty()) throw ValidationError("no input file configured (set input or pass --input)");
  std::vector<std::string> schema = required;
  AppendUnique(schema, config.log_diff);
  const auto raw = data::LoadPanelFile(config.input, schema);
  if (config.log_diff.empty()) return raw;
  return data::LogDiffColumns(raw, config.log_diff);
}

tvpvar::TvpVarSpec MakeSpec(const RunConfig& config, int k, int sample_length, std::uint64_t stream) {
  auto spec = tvpvar::TvpVarSpec::Make(k, config.lags, sample_length);
  spec.mcmc.draws = config.draws;
  spec.mcmc.burn_in = config.burn_in;
  spec.mcmc.thin = config.thin;
  spec.mcmc.stored_path_draws = config.stored_path_draws;
  spec.mcmc.seed = stream == 0 ? config.seed : DeriveSeed(config.seed, stream);
  return spec;
}

void RequireLength(Eigen::Index rows, int lags, const std::string& what) {
  if (rows <= lags + 10) {
    throw ValidationError(what + " has " + std::to_string(rows) + " observations; need more than lags + 10 = " +
                          std::to_string(lags + 10));
  }
}

void WritePosterior(OutputDirectory& out, const std::string& stem, const std::string& stage,
                    const tvpvar::TvpVarPosterior& posterior) {
  out.Write("posterior_" + stem + ".txt", stage, [&](std::ostream& os) { tvpvar::SavePosterior(os, posterior); });
  out.Write("summary_" + stem + ".csv", stage,
            [&](std::ostream& os) { tvpvar::WriteSummaryCsv(os, posterior.summary); });
}

void WriteConnectedness(OutputDirectory& out, const std::string& stem, const std::string& stage,
                        const connectedness::DynamicConnectedness& dynamic, connectedness::ToConvention convention) {
  const auto table = connectedness::StaticConnectedness(dynamic, convention);
  out.Write("connectedness_" + stem + "_static.csv", stage,
            [&](std::ostream& os) { connectedness::WriteStaticCsv(os, table, dynamic.names); });
  out.Write("connectedness_" + stem + "_dynamic.csv", stage,
            [&](std::ostream& os) { connectedness::WriteDynamicCsv(os, dynamic); });
  out.Write("connectedness_" + stem + "_npdc.csv", stage,
            [&](std::ostream& os) { connectedness::WriteNpdcCsv(os, dynamic); });
}

std::vector<data::NamedStats> DescribeColumns(const TimeSeriesPanel& panel, const std::vector<std::string>& names) {
  std::vector<data::NamedStats> rows;
  for (const auto& name : names) {
    const Eigen::VectorXd column = panel.Column(name);
    rows.push_back({name, data::Describe(AsSpan(column))});
  }
  return rows;
}

TimeSeriesPanel WithColumn(const TimeSeriesPanel& panel, const std::string& name, const std::vector<double>& values) {
  if (panel.HasColumn(name)) throw ValidationError("column '" + name + "' already exists");
  auto columns = panel.columns();
  columns.push_back(name);
  Eigen::MatrixXd m(panel.rows(), panel.cols() + 1);
  m.leftCols(panel.cols()) = panel.values();
  m.col(panel.cols()) = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return TimeSeriesPanel(panel.dates(), columns, m);
}

TimeSeriesPanel ResiliencePanel(const std::vector<resilience::ResilienceSeries>& series, const std::string& index) {
  if (index != "intensity" && index != "duration") {
    throw ValidationError("index must be intensity or duration, got '" + index + "'");
  }
  if (series.empty()) throw ValidationError("no resilience series");
  const auto& dates = series.front().dates;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(dates.size()), static_cast<Eigen::Index>(series.size()));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (series[j].dates != dates) throw ValidationError("resilience series do not share dates");
    const auto& v = index == "intensity" ? series[j].intensity : series[j].duration;
    for (std::size_t t = 0; t < v.size(); ++t) values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = v[t];
    names.push_back(series[j].market);
  }
  return TimeSeriesPanel(dates, names, values);
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (in.bad()) throw IoError("read failed for " + path.string());
  return lines;
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

/// Data lines after the header, which must equal `header`.
std::vector<std::vector<std::string>> ReadTable(const std::filesystem::path& path, const std::string& header) {
  std::vector<std::vector<std::string>> rows;
  bool seen = false;
  int line_no = 0;
  const auto expected = SplitCsvLine(header);
  for (const auto& line : ReadLines(path)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto cells = SplitCsvLine(trimmed);
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (!seen) {
      if (cells != expected) throw ValidationError(where + ": expected header " + header);
      seen = true;
      continue;
    }
    if (cells.size() != expected.size()) throw ValidationError(where + ": expected " + std::to_string(expected.size()) + " fields");
    rows.push_back(std::move(cells));
  }
  if (!seen) throw ValidationError(path.string() + ": missing header " + header);
  return rows;
}

}  // namespace

void RunDescribe(const RunConfig& config) {
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    stage = "load";
    const auto panel = LoadPrepared(config, config.variables);
    const auto names = config.variables.empty() ? panel.columns() : config.variables;
    stage = "describe";
    const auto rows = DescribeColumns(panel, names);
    out.Write("describe.csv", stage, [&](std::ostream& os) { data::WriteDescribeCsv(os, rows); });
  });
}

void RunEstimate(const RunConfig& config) {
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    if (config.variables.empty()) throw ValidationError("estimate needs variables");
    stage = "load";
    const auto panel = LoadPrepared(config, config.variables).Select(config.variables);
    RequireLength(panel.rows(), config.lags, "input panel");
    stage = "estimate";
    const auto spec = MakeSpec(config, static_cast<int>(panel.cols()), static_cast<int>(panel.rows()), 0);
    const auto posterior = tvpvar::EstimateMcmc(panel, spec);
    out.Write("posterior.txt", stage, [&](std::ostream& os) { tvpvar::SavePosterior(os, posterior); });
    out.Write("summary.csv", stage, [&](std::ostream& os) { tvpvar::WriteSummaryCsv(os, posterior.summary); });
  });
}

void RunIrf(const RunConfig& config, const std::filesystem::path& posterior_path) {
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    stage = "load";
    const auto posterior = tvpvar::LoadPosteriorFile(posterior_path);
    stage = "irf";
    const irf::ShockDefinition shock{config.shock_volatility, 1.0};
    const auto surface = irf::TimeVaryingIrf(posterior, config.irf_horizon, shock, config.irf_per_draw);
    out.Write("irf.csv", stage, [&](std::ostream& os) { irf::WriteIrfCsv(os, surface); });
  });
}

void RunResilience(const RunConfig& config, const std::filesystem::path& irf_csv) {
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    stage = "load";
    auto in = OpenInput(irf_csv);
    const auto surface = irf::ReadIrfCsv(in, irf_csv.string());
    if (config.shock.empty()) throw ValidationError("resilience needs the shock variable (set shock)");
    const int shock = surface.VariableIndex(config.shock);
    std::vector<std::string> markets = config.markets;
    if (markets.empty()) {
      for (const auto& v : surface.variables()) {
        if (v != config.shock) markets.push_back(v);
      }
    }
    stage = "resilience";
    std::vector<resilience::ResilienceSeries> series;
    for (const auto& m : markets) series.push_back(resilience::ComputeSeries(surface, surface.VariableIndex(m), shock));
    out.Write("resilience.csv", stage, [&](std::ostream& os) { resilience::WriteResilienceCsv(os, series); });
  });
}

void RunConnect(const RunConfig& config, const std::filesystem::path& resilience_csv, const std::string& index) {
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    stage = "load";
    TimeSeriesPanel panel = [&] {
      if (!resilience_csv.empty()) {
        auto in = OpenInput(resilience_csv);
        return ResiliencePanel(resilience::ReadResilienceCsv(in, resilience_csv.string()), index);
      }
      if (config.variables.size() < 2) throw ValidationError("connect needs at least two variables");
      return LoadPrepared(config, config.variables).Select(config.variables);
    }();
    RequireLength(panel.rows(), config.lags, "connectedness panel");
    stage = "connectedness";
    const auto spec = MakeSpec(config, static_cast<int>(panel.cols()), static_cast<int>(panel.rows()), 0);
    const auto posterior = tvpvar::EstimateMcmc(panel, spec);
    const auto stem = resilience_csv.empty() ? std::string("panel") : FileStem(index);
    WritePosterior(out, "connectedness_" + stem, stage, posterior);
    const auto dynamic = connectedness::FromPosterior(posterior, config.gfevd_horizon, config.to_convention);
    WriteConnectedness(out, stem, stage, dynamic, config.to_convention);
  });
}

void RunMediate(const RunConfig& config) {
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    if (config.outcomes.empty()) throw ValidationError("mediate needs outcomes");
    if (config.cpu.empty()) throw ValidationError("mediate needs cpu");
    std::vector<std::string> required = config.outcomes;
    AppendUnique(required, config.cpu);
    AppendUnique(required, config.mediators);
    AppendUnique(required, config.sentiment);
    stage = "load";
    const auto panel = LoadPrepared(config, required);
    stage = "mediation";
    std::vector<stats::NamedSeries> outcomes, mediators;
    for (const auto& name : config.outcomes) outcomes.push_back({name, ToVector(panel.Column(name))});
    for (const auto& name : config.mediators) mediators.push_back({name, ToVector(panel.Column(name))});
    if (!config.sentiment.empty()) {
      const auto pca = stats::PrincipalComposite(panel.Select(config.sentiment));
      mediators.push_back({config.sentiment_name, pca.scores});
    }
    const auto report = stats::MediationTwoStep(outcomes, ToVector(panel.Column(config.cpu)), mediators);
    out.Write("mediation.csv", stage, [&](std::ostream& os) { stats::WriteMediationCsv(os, report); });
  });
}

void RunPipeline(const RunConfig& config) {
  // Pre-flight: everything checkable before estimation, before the output
  // directory is touched.
  ValidateRanges(config);
  if (config.markets.empty()) throw ValidationError("pipeline needs markets");
  if (config.shock.empty()) throw ValidationError("pipeline needs shock");
  if (config.cpu.empty()) throw ValidationError("pipeline needs cpu");
  if (config.markets.size() < 2) throw ValidationError("pipeline needs at least two markets for connectedness");
  std::vector<std::string> required;
  AppendUnique(required, config.markets);
  if (required.size() != config.markets.size()) throw ValidationError("markets contain duplicates");
  AppendUnique(required, config.shock);
  AppendUnique(required, config.cpu);
  AppendUnique(required, config.mediators);
  AppendUnique(required, config.sentiment);
  if (std::find(config.markets.begin(), config.markets.end(), config.shock) != config.markets.end()) {
    throw ValidationError("shock '" + config.shock + "' is also listed as a market");
  }
  const auto panel0 = LoadPrepared(config, required);
  if (config.total_market && panel0.HasColumn(config.total_name)) {
    throw ValidationError("total market name '" + config.total_name + "' collides with an input column");
  }
  if (!config.sentiment.empty() && panel0.HasColumn(config.sentiment_name)) {
    throw ValidationError("sentiment name '" + config.sentiment_name + "' collides with an input column");
  }
  RequireLength(panel0.rows(), config.lags, "transformed input");
  RequireLength(panel0.rows() - config.lags, config.lags, "resilience series");

  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    stage = "transform";
    out.Write("data.csv", stage, [&](std::ostream& os) { data::SavePanel(os, panel0); });

    stage = "describe";
    const auto described = DescribeColumns(panel0, required);
    out.Write("describe.csv", stage, [&](std::ostream& os) { data::WriteDescribeCsv(os, described); });

    stage = "pca";
    TimeSeriesPanel panel = panel0;
    std::vector<std::string> markets = config.markets;
    std::vector<std::pair<std::string, stats::PcaComposite>> composites;
    if (config.total_market) {
      auto pca = stats::PrincipalComposite(panel0.Select(config.markets));
      panel = WithColumn(panel, config.total_name, pca.scores);
      markets.push_back(config.total_name);
      composites.emplace_back(config.total_name, std::move(pca));
    }
    if (!config.sentiment.empty()) {
      composites.emplace_back(config.sentiment_name, stats::PrincipalComposite(panel0.Select(config.sentiment)));
    }
    if (!composites.empty()) {
      out.Write("pca.csv", stage, [&](std::ostream& os) {
        os << "composite,column,loading,explained\n";
        for (const auto& [name, pca] : composites) {
          const auto& columns = name == config.total_name && config.total_market ? config.markets : config.sentiment;
          for (std::size_t j = 0; j < columns.size(); ++j) {
            os << name << ',' << columns[j] << ',' << FormatDouble(pca.loadings[j]) << ','
               << FormatDouble(pca.explained_fraction) << '\n';
          }
        }
      });
    }

    stage = "estimate";
    std::vector<tvpvar::TvpVarPosterior> posteriors(markets.size());
    ParallelFor(static_cast<int>(markets.size()), [&](int m) {
      const std::vector<std::string> names{config.shock, markets[static_cast<std::size_t>(m)]};
      const auto sub = panel.Select(names);
      const auto spec = MakeSpec(config, 2, static_cast<int>(sub.rows()), static_cast<std::uint64_t>(m + 1));
      posteriors[static_cast<std::size_t>(m)] = tvpvar::EstimateMcmc(sub, spec);
    });
    for (std::size_t m = 0; m < markets.size(); ++m) WritePosterior(out, FileStem(markets[m]), stage, posteriors[m]);

    stage = "irf";
    const irf::ShockDefinition shock{config.shock_volatility, 1.0};
    std::vector<irf::IrfSurface> surfaces;
    for (std::size_t m = 0; m < markets.size(); ++m) {
      surfaces.push_back(irf::TimeVaryingIrf(posteriors[m], config.irf_horizon, shock, config.irf_per_draw));
      out.Write("irf_" + FileStem(markets[m]) + ".csv", stage,
                [&](std::ostream& os) { irf::WriteIrfCsv(os, surfaces.back()); });
    }

    stage = "resilience";
    std::vector<resilience::ResilienceSeries> all_series;
    for (std::size_t m = 0; m < markets.size(); ++m) all_series.push_back(resilience::ComputeSeries(surfaces[m], 1, 0));
    out.Write("resilience.csv", stage, [&](std::ostream& os) { resilience::WriteResilienceCsv(os, all_series); });

    stage = "connectedness";
    const std::vector<resilience::ResilienceSeries> market_series(all_series.begin(),
                                                                  all_series.begin() + static_cast<long>(config.markets.size()));
    const std::vector<std::string> indices{"intensity", "duration"};
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const auto rp = ResiliencePanel(market_series, indices[i]);
      const auto spec = MakeSpec(config, static_cast<int>(rp.cols()), static_cast<int>(rp.rows()), 100 + i);
      const auto posterior = tvpvar::EstimateMcmc(rp, spec);
      WritePosterior(out, "connectedness_" + indices[i], stage, posterior);
      const auto dynamic = connectedness::FromPosterior(posterior, config.gfevd_horizon, config.to_convention);
      WriteConnectedness(out, indices[i], stage, dynamic, config.to_convention);
    }

    // CPU against the aggregate market's resilience (the first market when
    // no total composite is built).
    stage = "cpu_connectedness";
    const auto& aggregate = config.total_market ? all_series.back() : all_series.front();
    const auto resilience_rows = static_cast<Eigen::Index>(aggregate.dates.size());
    const Eigen::VectorXd cpu_aligned = panel.Column(config.cpu).tail(resilience_rows);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const auto rp = ResiliencePanel({aggregate}, indices[i]);
      const auto pair = WithColumn(TimeSeriesPanel(rp.dates(), {config.cpu}, cpu_aligned), aggregate.market,
                                   ToVector(rp.values().col(0)));
      const auto spec = MakeSpec(config, 2, static_cast<int>(pair.rows()), 200 + i);
      const auto posterior = tvpvar::EstimateMcmc(pair, spec);
      WritePosterior(out, "cpu_" + indices[i], stage, posterior);
      const auto dynamic = connectedness::FromPosterior(posterior, config.gfevd_horizon, config.to_convention);
      out.Write("npdc_cpu_" + indices[i] + ".csv", stage,
                [&](std::ostream& os) { connectedness::WriteNpdcCsv(os, dynamic); });
    }

    stage = "mediation";
    const auto aligned = [&](const std::string& name) { return ToVector(panel.Column(name).tail(resilience_rows)); };
    std::vector<stats::NamedSeries> outcomes{{"Intensity", aggregate.intensity}, {"Duration", aggregate.duration}};
    std::vector<stats::NamedSeries> mediators;
    for (const auto& name : config.mediators) mediators.push_back({name, aligned(name)});
    if (!config.sentiment.empty()) {
      const auto& scores = composites.back().second.scores;
      mediators.push_back({config.sentiment_name,
                           std::vector<double>(scores.end() - resilience_rows, scores.end())});
    }
    const auto report = stats::MediationTwoStep(outcomes, aligned(config.cpu), mediators);
    out.Write("mediation.csv", stage, [&](std::ostream& os) { stats::WriteMediationCsv(os, report); });
  });
}

void RunPlotdata(const RunConfig& config, const std::filesystem::path& artifact, const std::string& kind) {
  static const std::set<std::string> kKinds{"irf", "resilience", "dynamic", "npdc", "summary"};
  if (!kKinds.count(kind)) {
    throw ValidationError("unknown plotdata kind '" + kind + "' (irf, resilience, dynamic, npdc, summary)");
  }
  RunStages(config, [&](OutputDirectory& out, std::string& stage) {
    stage = "plotdata";
    const auto name = "plot_" + kind + ".csv";
    if (kind == "irf") {
      auto in = OpenInput(artifact);
      const auto surface = irf::ReadIrfCsv(in, artifact.string());
      out.Write(name, stage, [&](std::ostream& os) { irf::WriteIrfCsv(os, surface); });
    } else if (kind == "resilience") {
      auto in = OpenInput(artifact);
      const auto series = resilience::ReadResilienceCsv(in, artifact.string());
      out.Write(name, stage, [&](std::ostream& os) { resilience::WriteResilienceCsv(os, series); });
    } else if (kind == "dynamic") {
      const std::string header = "date,index_type,market,value";
      const auto rows = ReadTable(artifact, header);
      out.Write(name, stage, [&](std::ostream& os) {
        os << header << '\n';
        for (const auto& r : rows) os << Join(r, ",") << '\n';
      });
    } else if (kind == "summary") {
      const std::string header = "parameter,mean,sd,lower95,upper95,cd,cd_p_value,ineff";
      const auto rows = ReadTable(artifact, header);
      out.Write(name, stage, [&](std::ostream& os) {
        os << header << '\n';
        for (const auto& r : rows) os << Join(r, ",") << '\n';
      });
    } else {
      const std::string header = "date,from,to,npdc";
      const auto rows = ReadTable(artifact, header);
      std::vector<std::string> order;
      for (const auto& r : rows) {
        AppendUnique(order, r[1]);
        AppendUnique(order, r[2]);
      }
      const auto position = [&](const std::string& v) { return std::find(order.begin(), order.end(), v) - order.begin(); };
      out.Write(name, stage, [&](std::ostream& os) {
        os << header << '\n';
        for (const auto& r : rows) {
          if (position(r[1]) < position(r[2])) os << Join(r, ",") << '\n';
        }
      });
    }
  });
}

void RunSynth(const std::filesystem::path& out_dir, std::uint64_t seed) {
  const std::vector<std::string> names{"VIX", "Stock", "Bond", "Exchange", "CPU", "NPL", "SentA", "SentB"};
  const int k = static_cast<int>(names.size());
  const int periods = 192;
  auto spec = tvpvar::TvpVarSpec::Make(k, 1, periods + 1);
  const int m = 1 + k;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(tvpvar::BetaSize(k, 1));
  const auto b = [&](int row, int col) -> double& { return beta[row * m + 1 + col]; };
  for (int i = 0; i < k; ++i) b(i, i) = 0.2;
  for (int i = 1; i <= 3; ++i) b(i, 0) = -0.15;
  b(5, 4) = 0.3;
  b(6, 4) = 0.25;
  b(7, 4) = 0.2;
  b(7, 6) = 0.3;
  beta[5 * m] = 0.5;
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(tvpvar::AlphaSize(k));
  for (int i = 1; i <= 3; ++i) alpha[tvpvar::AlphaIndex(i, 0)] = 0.4;
  alpha[tvpvar::AlphaIndex(2, 1)] = 0.2;
  Eigen::VectorXd h = Eigen::VectorXd::Constant(k, 2.0 * std::log(0.05));
  h[5] = 2.0 * std::log(0.1);

  tvpvar::DgpTruth truth;
  truth.paths = tvpvar::ParameterPaths::Constant(k, 1, 1, beta, alpha, h);
  truth.h_innovation_var = Eigen::VectorXd::Constant(k, 0.02);
  truth.alpha_innovation_var = Eigen::VectorXd::Constant(alpha.size(), 1e-4);
  truth.first_date = std::chrono::year{2007} / std::chrono::December;
  truth.names = names;
  const auto sim = tvpvar::SimulateDgp(spec, truth, seed);

  // Prices for the first five columns (log-differenced by the pipeline),
  // levels for the rest.
  Eigen::MatrixXd values = sim.panel.values();
  for (int j = 0; j < 5; ++j) {
    double level = 100.0;
    values(0, j) = level;
    for (Eigen::Index t = 1; t < values.rows(); ++t) {
      level *= std::exp(sim.panel.values()(t, j));
      values(t, j) = level;
    }
  }
  const TimeSeriesPanel panel(sim.panel.dates(), names, values);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  {
    std::ofstream data_out(out_dir / "demo_data.csv", std::ios::binary | std::ios::trunc);
    if (!data_out) throw IoError("cannot write " + (out_dir / "demo_data.csv").string());
    data::SavePanel(data_out, panel, "finres synthetic demo data, seed " + std::to_string(seed));
    if (!data_out) throw IoError("write failed for demo_data.csv");
  }
  std::ofstream conf(out_dir / "demo.conf", std::ios::binary | std::ios::trunc);
  if (!conf) throw IoError("cannot write " + (out_dir / "demo.conf").string());
  conf << "# finres demo configuration\n"
          "input = demo_data.csv\n"
          "markets = Stock,Bond,Exchange\n"
          "shock = VIX\n"
          "cpu = CPU\n"
          "mediators = NPL\n"
          "sentiment = SentA,SentB\n"
          "log_diff = VIX,Stock,Bond,Exchange,CPU\n"
          "lags = 1\n"
          "draws = 3000\n"
          "burn_in = 500\n"
          "stored_path_draws = 50\n"
          "seed = "
       << seed
       << "\n"
          "irf_horizon = 12\n"
          "gfevd_horizon = 12\n";
  if (!conf) throw IoError("write failed for demo.conf");
}

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const ValidationError*>(&error) != nullptr) return 2;
  if (dynamic_cast<const NumericalError*>(&error) != nullptr) return 3;
  if (dynamic_cast<const IoError*>(&error) != nullptr) return 4;
  return 1;
}

}  // namespace finres::cli
