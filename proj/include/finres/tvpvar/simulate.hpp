#pragma once

#include <cstdint>

#include "finres/data/panel.hpp"
#include "finres/tvpvar/model.hpp"

namespace finres::tvpvar {

/// Parameter truth for the generator. `paths` holds either one period (the
/// starting values at t = s+1, propagated forward as random walks with the
/// given diagonal innovation variances) or every period t = s+1..T (used
/// as is; innovation variances ignored).
struct DgpTruth {
  ParameterPaths paths;
  Eigen::VectorXd beta_innovation_var;
  Eigen::VectorXd alpha_innovation_var;
  Eigen::VectorXd h_innovation_var;
  /// s presample rows y_1..y_s (zeros when empty).
  Eigen::MatrixXd presample;
  data::Month first_date{std::chrono::year{2000}, std::chrono::January};
  std::vector<std::string> names;
};

struct SimulatedData {
  data::TimeSeriesPanel panel;
  ParameterPaths truth;
};

/// Draws y_t = c_t + Σ B_{l,t} y_{t−l} + A_t⁻¹ Σ_t ε_t for t = s+1..T with
/// the parameter laws of the random-walk model. Output rows: the s
/// presample rows followed by the simulated periods.
SimulatedData SimulateDgp(const TvpVarSpec& spec, const DgpTruth& truth, std::uint64_t seed);

}  // namespace finres::tvpvar
