#include "finres/irf.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include "finres/error.hpp"
#include "finres/format.hpp"
#include "finres/parallel.hpp"

namespace finres::irf {

IrfSurface::IrfSurface(std::vector<data::Month> dates, std::vector<std::string> variables, int horizon)
    : dates_(std::move(dates)), variables_(std::move(variables)), horizon_(horizon) {
  if (horizon_ < 1) throw ValidationError("irf: horizon must be at least 1");
  if (variables_.empty()) throw ValidationError("irf: at least one variable required");
  const std::size_t k = variables_.size();
  values_.assign(dates_.size() * static_cast<std::size_t>(horizon_) * k * k, 0.0);
  shock_scale = Eigen::MatrixXd::Ones(periods(), static_cast<Eigen::Index>(k));
}

std::size_t IrfSurface::Offset(int t, int n, int response, int shock) const {
  const auto kk = static_cast<std::size_t>(k());
  return ((static_cast<std::size_t>(t) * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(n - 1)) * kk +
          static_cast<std::size_t>(response)) * kk + static_cast<std::size_t>(shock);
}

int IrfSurface::VariableIndex(std::string_view name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw ValidationError("irf: unknown variable '" + std::string(name) + "'");
  return static_cast<int>(it - variables_.begin());
}

std::vector<double> IrfSurface::Path(int t, int response, int shock) const {
  if (t < 0 || t >= periods() || response < 0 || response >= k() || shock < 0 || shock >= k()) {
    throw ValidationError("irf: index out of range");
  }
  std::vector<double> path(static_cast<std::size_t>(horizon_));
  for (int n = 1; n <= horizon_; ++n) path[static_cast<std::size_t>(n - 1)] = at(t, n, response, shock);
  return path;
}

std::vector<Eigen::MatrixXd> ResponseMatrices(const std::vector<Eigen::MatrixXd>& lag_matrices,
                                              const Eigen::MatrixXd& impact, int horizon) {
  if (horizon < 1) throw ValidationError("irf: horizon must be at least 1");
  std::vector<Eigen::MatrixXd> psi;
  psi.reserve(static_cast<std::size_t>(horizon));
  psi.push_back(impact);
  const auto s = static_cast<int>(lag_matrices.size());
  for (int n = 2; n <= horizon; ++n) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(impact.rows(), impact.cols());
    for (int i = 1; i <= std::min(n - 1, s); ++i) {
      next.noalias() += lag_matrices[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(n - 1 - i)];
    }
    psi.push_back(std::move(next));
  }
  return psi;
}

namespace {

Eigen::MatrixXd ShockScales(const tvpvar::ParameterPaths& paths, const ShockDefinition& shock) {
  const int periods = paths.periods();
  Eigen::MatrixXd scale(periods, paths.k);
  switch (shock.volatility) {
    case ShockVolatility::kUnit:
      scale.setOnes();
      break;
    case ShockVolatility::kTimeVarying:
      for (int t = 0; t < periods; ++t) scale.row(t) = paths.Volatility(t).transpose();
      break;
    case ShockVolatility::kTimeAveraged: {
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(paths.k);
      for (int t = 0; t < periods; ++t) mean += paths.Volatility(t).transpose();
      mean /= static_cast<double>(periods);
      scale.rowwise() = mean;
      break;
    }
  }
  return scale * shock.scale;
}

}  // namespace

IrfSurface TimeVaryingIrf(const tvpvar::ParameterPaths& paths, const std::vector<data::Month>& dates,
                          const std::vector<std::string>& variables, int horizon, const ShockDefinition& shock) {
  if (horizon < 1) throw ValidationError("irf: horizon must be at least 1");
  if (static_cast<int>(dates.size()) != paths.periods() || paths.periods() == 0) {
    throw ValidationError("irf: one date per period required");
  }
  if (static_cast<int>(variables.size()) != paths.k) throw ValidationError("irf: one name per variable required");
  if (!std::isfinite(shock.scale)) throw ValidationError("irf: shock scale must be finite");
  IrfSurface surface(dates, variables, horizon);
  surface.shock_scale = ShockScales(paths, shock);
  const int k = paths.k;
  ParallelFor(paths.periods(), [&](int t) {
    const Eigen::MatrixXd impact = paths.Impact(t, surface.shock_scale.row(t).transpose());
    const auto psi = ResponseMatrices(paths.LagMatrices(t), impact, horizon);
    for (int n = 1; n <= horizon; ++n) {
      const auto& m = psi[static_cast<std::size_t>(n - 1)];
      if (!m.allFinite()) throw NumericalError("irf: non-finite response at period " + std::to_string(t));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) surface.at(t, n, i, j) = m(i, j);
      }
    }
  });
  return surface;
}

IrfSurface TimeVaryingIrf(const tvpvar::TvpVarPosterior& posterior, int horizon, const ShockDefinition& shock,
                          bool per_draw) {
  if (!per_draw) return TimeVaryingIrf(posterior.mean_paths, posterior.dates, posterior.variables, horizon, shock);
  if (posterior.path_draws.empty()) throw ValidationError("irf: posterior has no stored path draws");
  IrfSurface total = TimeVaryingIrf(posterior.path_draws.front(), posterior.dates, posterior.variables, horizon, shock);
  Eigen::MatrixXd scale_sum = total.shock_scale;
  for (std::size_t d = 1; d < posterior.path_draws.size(); ++d) {
    const IrfSurface one = TimeVaryingIrf(posterior.path_draws[d], posterior.dates, posterior.variables, horizon, shock);
    scale_sum += one.shock_scale;
    for (int t = 0; t < total.periods(); ++t) {
      for (int n = 1; n <= horizon; ++n) {
        for (int i = 0; i < total.k(); ++i) {
          for (int j = 0; j < total.k(); ++j) total.at(t, n, i, j) += one.at(t, n, i, j);
        }
      }
    }
  }
  const double draws = static_cast<double>(posterior.path_draws.size());
  for (int t = 0; t < total.periods(); ++t) {
    for (int n = 1; n <= horizon; ++n) {
      for (int i = 0; i < total.k(); ++i) {
        for (int j = 0; j < total.k(); ++j) total.at(t, n, i, j) /= draws;
      }
    }
  }
  total.shock_scale = scale_sum / draws;
  return total;
}

void WriteIrfCsv(std::ostream& out, const IrfSurface& surface) {
  out << "date,horizon,response_var,shock_var,value\n";
  for (int t = 0; t < surface.periods(); ++t) {
    const auto date = data::FormatMonth(surface.dates()[static_cast<std::size_t>(t)]);
    for (int n = 1; n <= surface.horizon(); ++n) {
      for (int i = 0; i < surface.k(); ++i) {
        for (int j = 0; j < surface.k(); ++j) {
          out << date << ',' << n << ',' << surface.variables()[static_cast<std::size_t>(i)] << ','
              << surface.variables()[static_cast<std::size_t>(j)] << ',' << FormatDouble(surface.at(t, n, i, j))
              << '\n';
        }
      }
    }
  }
}

IrfSurface ReadIrfCsv(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<data::Month> dates;
  std::vector<std::string> names;
  std::map<std::tuple<int, int, int, int>, double> cells;
  int horizon = 0;
  const auto name_index = [&](const std::string& name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<int>(it - names.begin());
    names.push_back(name);
    return static_cast<int>(names.size() - 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto where = source + ":" + std::to_string(line_no);
    const auto cells_in = SplitCsvLine(trimmed);
    if (!header_seen) {
      if (cells_in != std::vector<std::string>{"date", "horizon", "response_var", "shock_var", "value"}) {
        throw ValidationError(where + ": expected header date,horizon,response_var,shock_var,value");
      }
      header_seen = true;
      continue;
    }
    if (cells_in.size() != 5) throw ValidationError(where + ": expected 5 fields");
    data::Month month;
    try {
      month = data::ParseMonth(cells_in[0]);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (dates.empty() || dates.back() != month) {
      if (std::find(dates.begin(), dates.end(), month) != dates.end()) {
        throw ValidationError(where + ": rows for a date must be contiguous");
      }
      dates.push_back(month);
    }
    const auto number = [&](const std::string& text) {
      const auto v = ParseDouble(text);
      if (!v) throw ValidationError(where + ": non-numeric value '" + text + "'");
      return *v;
    };
    const double n_value = number(cells_in[1]);
    if (n_value < 1 || n_value != std::floor(n_value)) throw ValidationError(where + ": bad horizon");
    const int n = static_cast<int>(n_value);
    horizon = std::max(horizon, n);
    const int i = name_index(cells_in[2]);
    const int j = name_index(cells_in[3]);
    const double value = number(cells_in[4]);
    const auto key = std::make_tuple(static_cast<int>(dates.size() - 1), n, i, j);
    if (!cells.emplace(key, value).second) throw ValidationError(where + ": duplicate cell");
  }
  if (!header_seen) throw ValidationError(source + ": missing header");
  if (dates.empty()) throw ValidationError(source + ": no rows");
  const std::size_t expected = dates.size() * static_cast<std::size_t>(horizon) * names.size() * names.size();
  if (cells.size() != expected) throw ValidationError(source + ": incomplete surface");
  IrfSurface surface(dates, names, horizon);
  for (const auto& [key, value] : cells) {
    const auto [t, n, i, j] = key;
    surface.at(t, n, i, j) = value;
  }
  return surface;
}

}  // namespace finres::irf
