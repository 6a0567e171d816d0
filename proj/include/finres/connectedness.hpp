#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "finres/data/panel.hpp"
#include "finres/tvpvar/sampler.hpp"

namespace finres::connectedness {

/// Moving-average matrices Λ_0..Λ_{H−1} of a VAR with lag matrices
/// B_1..B_s: Λ_0 = I, Λ_h = Σ_{i=1..min(h,s)} B_i Λ_{h−i}.
std::vector<Eigen::MatrixXd> VmaCoefficients(std::span<const Eigen::MatrixXd> lag_matrices, int horizon);

/// Generalized FEVD at horizon H:
///   Φ_jk = σ_kk⁻¹ Σ_{h<H} (e_j' Λ_h Ω e_k)² / Σ_{h<H} e_j' Λ_h Ω Λ_h' e_j.
/// Throws for nonpositive σ_kk, a non-PSD Ω or H > vma.size().
Eigen::MatrixXd Gfevd(std::span<const Eigen::MatrixXd> vma, const Eigen::MatrixXd& omega, int horizon);

/// Divides each row by its sum. Negative entries or a zero row are errors.
Eigen::MatrixXd NormalizeGfevd(const Eigen::MatrixXd& phi);

/// How TO_j is scaled. kPlainSum: 100·Σ_{k≠j} Φ̃_kj (the reading under which
/// Σ NET = 0 and TCI = mean(TO)). kColumnNormalized: the same sum divided by
/// the column total Σ_k Φ̃_kj.
enum class ToConvention { kPlainSum, kColumnNormalized };

/// Shares are fractions; every aggregate is in percent.
struct ConnectednessTable {
  Eigen::MatrixXd shares;
  double tci = 0.0;
  Eigen::VectorXd from;
  Eigen::VectorXd to;
  Eigen::VectorXd net;
  /// npdc(j, k) = 100·(Φ̃_kj − Φ̃_jk); exactly antisymmetric.
  Eigen::MatrixXd npdc;
  int horizon = 0;
};

ConnectednessTable BuildTable(const Eigen::MatrixXd& shares, int horizon,
                              ToConvention convention = ToConvention::kPlainSum);

struct DynamicConnectedness {
  std::vector<data::Month> dates;
  std::vector<std::string> names;
  std::vector<ConnectednessTable> tables;
};

/// One table per period from time-t coefficients and Ω_t.
DynamicConnectedness FromPaths(const tvpvar::ParameterPaths& paths, const std::vector<data::Month>& dates,
                               const std::vector<std::string>& names, int horizon,
                               ToConvention convention = ToConvention::kPlainSum);

/// Uses the posterior-mean paths.
DynamicConnectedness FromPosterior(const tvpvar::TvpVarPosterior& posterior, int horizon,
                                   ToConvention convention = ToConvention::kPlainSum);

/// Estimates a TVP-VAR on the panel, then FromPosterior.
DynamicConnectedness ComputeDynamic(const data::TimeSeriesPanel& panel, const tvpvar::TvpVarSpec& spec,
                                    int horizon, ToConvention convention = ToConvention::kPlainSum);

/// Time-average of the dynamic shares, rows re-normalized, aggregates
/// recomputed from the averaged shares.
ConnectednessTable StaticConnectedness(const DynamicConnectedness& dynamic,
                                       ToConvention convention = ToConvention::kPlainSum);

/// Alternative static table from a single constant-coefficient VAR(lags)
/// fitted by least squares over the whole panel.
ConnectednessTable StaticFromConstantVar(const data::TimeSeriesPanel& panel, int lags, int horizon,
                                         ToConvention convention = ToConvention::kPlainSum);

/// k named rows × k named columns of percent shares plus a `From` column,
/// then a `To` row whose last cell is the TCI.
void WriteStaticCsv(std::ostream& out, const ConnectednessTable& table, const std::vector<std::string>& names);

/// Long format `date,index_type,market,value`, index_type ∈ {TCI,FROM,TO,NET}.
/// TCI rows use market `ALL`.
void WriteDynamicCsv(std::ostream& out, const DynamicConnectedness& dynamic);

/// `date,from,to,npdc` for every ordered pair from ≠ to; npdc is the net
/// pairwise transmission from `from` to `to`, i.e. npdc(from, to).
void WriteNpdcCsv(std::ostream& out, const DynamicConnectedness& dynamic);

}  // namespace finres::connectedness
