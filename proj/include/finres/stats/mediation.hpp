#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "finres/stats/ols.hpp"

namespace finres::stats {

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

/// "***" for |t| > 2.576, "**" for > 1.96, "*" for > 1.645, else "".
std::string SignificanceStars(double t_value);

struct MediationEquation {
  enum class Role { kOutcome, kMediator };
  std::string name;
  Role role;
  OlsFit fit;
  std::string slope_stars;
  std::string intercept_stars;
};

struct MediationReport {
  /// Outcome equations first (input order), then mediator equations.
  std::vector<MediationEquation> equations;
};

/// Two-step mediation: every outcome on [1, cpu], then every mediator on
/// [1, cpu]. Throws ValidationError for length mismatches or a constant cpu.
MediationReport MediationTwoStep(const std::vector<NamedSeries>& outcomes,
                                 const std::vector<double>& cpu,
                                 const std::vector<NamedSeries>& mediators);

/// Rows CPU, CPU_t, Cons, Cons_t, R2, R2_adj; one column per equation. Stars
/// are appended to the coefficient cells.
void WriteMediationCsv(std::ostream& out, const MediationReport& report);

}  // namespace finres::stats
