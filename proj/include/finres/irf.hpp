#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "finres/data/panel.hpp"
#include "finres/tvpvar/sampler.hpp"

namespace finres::irf {

enum class ShockVolatility {
  /// σ_j averaged over the sample, so shock sizes are comparable across t.
  kTimeAveraged,
  /// σ_{j,t} at each date.
  kTimeVarying,
  /// σ_j = 1, i.e. the impact matrix is A_t⁻¹ alone.
  kUnit,
};

struct ShockDefinition {
  ShockVolatility volatility = ShockVolatility::kTimeAveraged;
  /// Multiplies every structural shock.
  double scale = 1.0;
};

inline constexpr int kDefaultHorizon = 12;

/// Responses Φ[t][n][i ← j] with n = 1..horizon.
class IrfSurface {
 public:
  IrfSurface() = default;
  IrfSurface(std::vector<data::Month> dates, std::vector<std::string> variables, int horizon);

  int periods() const { return static_cast<int>(dates_.size()); }
  int horizon() const { return horizon_; }
  int k() const { return static_cast<int>(variables_.size()); }
  const std::vector<data::Month>& dates() const { return dates_; }
  const std::vector<std::string>& variables() const { return variables_; }
  int VariableIndex(std::string_view name) const;

  double& at(int t, int n, int response, int shock) { return values_[Offset(t, n, response, shock)]; }
  double at(int t, int n, int response, int shock) const { return values_[Offset(t, n, response, shock)]; }
  /// Φ[t][1..N][response ← shock].
  std::vector<double> Path(int t, int response, int shock) const;

  /// Shock sizes used per date (periods × k); identical rows under kTimeAveraged.
  Eigen::MatrixXd shock_scale;

 private:
  std::size_t Offset(int t, int n, int response, int shock) const;

  std::vector<data::Month> dates_;
  std::vector<std::string> variables_;
  int horizon_ = 0;
  std::vector<double> values_;
};

/// Responses of a VAR with lag matrices B_1..B_s to the impact matrix:
/// Ψ_1 = impact, Ψ_n = Σ_{i=1..min(n−1,s)} B_i Ψ_{n−i}. Returns Ψ_1..Ψ_N.
std::vector<Eigen::MatrixXd> ResponseMatrices(const std::vector<Eigen::MatrixXd>& lag_matrices,
                                              const Eigen::MatrixXd& impact, int horizon);

/// Coefficients frozen at their time-t values for each period.
IrfSurface TimeVaryingIrf(const tvpvar::ParameterPaths& paths, const std::vector<data::Month>& dates,
                          const std::vector<std::string>& variables, int horizon,
                          const ShockDefinition& shock = {});

/// Point-estimate surface from the posterior-mean paths, or, with per_draw,
/// the average of the surfaces of every stored path draw.
IrfSurface TimeVaryingIrf(const tvpvar::TvpVarPosterior& posterior, int horizon,
                          const ShockDefinition& shock = {}, bool per_draw = false);

/// Long format `date,horizon,response_var,shock_var,value`.
void WriteIrfCsv(std::ostream& out, const IrfSurface& surface);
IrfSurface ReadIrfCsv(std::istream& in, const std::string& source);

}  // namespace finres::irf
