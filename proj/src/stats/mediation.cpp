#include "finres/stats/mediation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "finres/error.hpp"
#include "finres/format.hpp"

namespace finres::stats {

std::string SignificanceStars(double t_value) {
  const double a = std::abs(t_value);
  if (a > 2.576) return "***";
  if (a > 1.96) return "**";
  if (a > 1.645) return "*";
  return "";
}

namespace {

MediationEquation FitEquation(const NamedSeries& series, const Eigen::MatrixXd& cpu,
                              MediationEquation::Role role) {
  if (static_cast<Eigen::Index>(series.values.size()) != cpu.rows()) {
    throw ValidationError("mediation: series '" + series.name + "' has length " +
                          std::to_string(series.values.size()) + ", cpu has " +
                          std::to_string(cpu.rows()));
  }
  MediationEquation eq{series.name, role, Ols(series.values, cpu), "", ""};
  eq.slope_stars = SignificanceStars(eq.fit.t_values[1]);
  eq.intercept_stars = SignificanceStars(eq.fit.t_values[0]);
  return eq;
}

}  // namespace

MediationReport MediationTwoStep(const std::vector<NamedSeries>& outcomes,
                                 const std::vector<double>& cpu,
                                 const std::vector<NamedSeries>& mediators) {
  if (cpu.size() < 3) throw ValidationError("mediation: cpu series too short");
  const auto [lo, hi] = std::minmax_element(cpu.begin(), cpu.end());
  if (*lo == *hi) throw ValidationError("mediation: cpu regressor is constant");
  const Eigen::MatrixXd x =
      Eigen::Map<const Eigen::VectorXd>(cpu.data(), static_cast<Eigen::Index>(cpu.size()));

  MediationReport report;
  for (const auto& s : outcomes) report.equations.push_back(FitEquation(s, x, MediationEquation::Role::kOutcome));
  for (const auto& s : mediators) report.equations.push_back(FitEquation(s, x, MediationEquation::Role::kMediator));
  return report;
}

void WriteMediationCsv(std::ostream& out, const MediationReport& report) {
  out << "term";
  for (const auto& eq : report.equations) out << ',' << eq.name;
  out << '\n';
  const auto row = [&](const char* label, auto cell) {
    out << label;
    for (const auto& eq : report.equations) out << ',' << cell(eq);
    out << '\n';
  };
  row("CPU", [](const MediationEquation& e) { return FormatFixed(e.fit.coefficients[1], 4) + e.slope_stars; });
  row("CPU_t", [](const MediationEquation& e) { return FormatFixed(e.fit.t_values[1], 4); });
  row("Cons", [](const MediationEquation& e) { return FormatFixed(e.fit.coefficients[0], 4) + e.intercept_stars; });
  row("Cons_t", [](const MediationEquation& e) { return FormatFixed(e.fit.t_values[0], 4); });
  row("R2", [](const MediationEquation& e) { return FormatFixed(e.fit.r_squared, 4); });
  row("R2_adj", [](const MediationEquation& e) { return FormatFixed(e.fit.adj_r_squared, 4); });
}

}  // namespace finres::stats
