#include "finres/connectedness.hpp"

#include <cmath>
#include <ostream>

#include "finres/error.hpp"
#include "finres/format.hpp"
#include "finres/linalg.hpp"

namespace finres::connectedness {

std::vector<Eigen::MatrixXd> VmaCoefficients(std::span<const Eigen::MatrixXd> lag_matrices, int horizon) {
  if (horizon < 1) throw ValidationError("vma: horizon must be at least 1");
  if (lag_matrices.empty()) throw ValidationError("vma: need at least one lag matrix");
  const Eigen::Index k = lag_matrices.front().rows();
  for (const auto& b : lag_matrices) {
    if (b.rows() != k || b.cols() != k) throw ValidationError("vma: lag matrices must be square of common size");
  }
  std::vector<Eigen::MatrixXd> lambda;
  lambda.reserve(static_cast<std::size_t>(horizon));
  lambda.push_back(Eigen::MatrixXd::Identity(k, k));
  const auto s = static_cast<int>(lag_matrices.size());
  for (int h = 1; h < horizon; ++h) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, k);
    for (int i = 1; i <= std::min(h, s); ++i) next += lag_matrices[static_cast<std::size_t>(i - 1)] * lambda[static_cast<std::size_t>(h - i)];
    lambda.push_back(std::move(next));
  }
  return lambda;
}

Eigen::MatrixXd Gfevd(std::span<const Eigen::MatrixXd> vma, const Eigen::MatrixXd& omega, int horizon) {
  if (horizon < 1) throw ValidationError("gfevd: horizon must be at least 1");
  if (static_cast<std::size_t>(horizon) > vma.size()) {
    throw ValidationError("gfevd: horizon exceeds available VMA matrices");
  }
  const Eigen::Index k = omega.rows();
  if (omega.cols() != k) throw ValidationError("gfevd: covariance must be square");
  for (int h = 0; h < horizon; ++h) {
    if (vma[static_cast<std::size_t>(h)].rows() != k || vma[static_cast<std::size_t>(h)].cols() != k) {
      throw ValidationError("gfevd: VMA and covariance dimensions differ");
    }
  }
  if (!omega.isApprox(omega.transpose(), 1e-10)) throw ValidationError("gfevd: covariance is not symmetric");
  for (Eigen::Index j = 0; j < k; ++j) {
    if (!(omega(j, j) > 0.0)) throw DomainError("gfevd: nonpositive variance sigma_kk");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(omega, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * eig.eigenvalues().cwiseAbs().maxCoeff()) {
    throw ValidationError("gfevd: covariance is not positive semidefinite");
  }

  Eigen::MatrixXd numerator = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd denominator = Eigen::VectorXd::Zero(k);
  for (int h = 0; h < horizon; ++h) {
    const Eigen::MatrixXd& lambda = vma[static_cast<std::size_t>(h)];
    const Eigen::MatrixXd lo = lambda * omega;
    numerator += lo.array().square().matrix();
    denominator += (lo * lambda.transpose()).diagonal();
  }
  Eigen::MatrixXd phi(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index c = 0; c < k; ++c) phi(j, c) = numerator(j, c) / omega(c, c) / denominator[j];
  }
  return phi;
}

Eigen::MatrixXd NormalizeGfevd(const Eigen::MatrixXd& phi) {
  if (phi.rows() != phi.cols()) throw ValidationError("normalize: matrix must be square");
  if (!phi.allFinite() || (phi.array() < 0.0).any()) {
    throw ValidationError("normalize: entries must be finite and nonnegative");
  }
  Eigen::MatrixXd out = phi;
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    const double sum = phi.row(j).sum();
    if (!(sum > 0.0)) throw NumericalError("normalize: row " + std::to_string(j) + " sums to zero");
    out.row(j) /= sum;
  }
  return out;
}

ConnectednessTable BuildTable(const Eigen::MatrixXd& shares, int horizon, ToConvention convention) {
  const Eigen::Index k = shares.rows();
  if (shares.cols() != k || k == 0) throw ValidationError("connectedness: shares must be square");
  ConnectednessTable table;
  table.shares = shares;
  table.horizon = horizon;
  Eigen::VectorXd row_off = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd col_off = Eigen::VectorXd::Zero(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index c = 0; c < k; ++c) {
      if (c == j) continue;
      row_off[j] += shares(j, c);
      col_off[c] += shares(j, c);
    }
  }
  table.tci = 100.0 * row_off.sum() / shares.sum();
  table.from.resize(k);
  table.to.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    table.from[j] = 100.0 * row_off[j] / shares.row(j).sum();
    table.to[j] = convention == ToConvention::kPlainSum ? 100.0 * col_off[j]
                                                        : 100.0 * col_off[j] / shares.col(j).sum();
  }
  table.net = table.to - table.from;
  table.npdc = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index c = j + 1; c < k; ++c) {
      const double v = 100.0 * (shares(c, j) - shares(j, c));
      table.npdc(j, c) = v;
      table.npdc(c, j) = -v;
    }
  }
  return table;
}

DynamicConnectedness FromPaths(const tvpvar::ParameterPaths& paths, const std::vector<data::Month>& dates,
                               const std::vector<std::string>& names, int horizon, ToConvention convention) {
  if (static_cast<int>(dates.size()) != paths.periods()) throw ValidationError("connectedness: one date per period required");
  if (static_cast<int>(names.size()) != paths.k) throw ValidationError("connectedness: one name per variable required");
  DynamicConnectedness out;
  out.dates = dates;
  out.names = names;
  out.tables.reserve(dates.size());
  for (int t = 0; t < paths.periods(); ++t) {
    const auto lags = paths.LagMatrices(t);
    const auto vma = VmaCoefficients(lags, horizon);
    const Eigen::MatrixXd phi = Gfevd(vma, paths.Covariance(t), horizon);
    out.tables.push_back(BuildTable(NormalizeGfevd(phi), horizon, convention));
  }
  return out;
}

DynamicConnectedness FromPosterior(const tvpvar::TvpVarPosterior& posterior, int horizon, ToConvention convention) {
  return FromPaths(posterior.mean_paths, posterior.dates, posterior.variables, horizon, convention);
}

DynamicConnectedness ComputeDynamic(const data::TimeSeriesPanel& panel, const tvpvar::TvpVarSpec& spec,
                                    int horizon, ToConvention convention) {
  if (horizon < 1) throw ValidationError("connectedness: horizon must be at least 1");
  return FromPosterior(tvpvar::EstimateMcmc(panel, spec), horizon, convention);
}

ConnectednessTable StaticConnectedness(const DynamicConnectedness& dynamic, ToConvention convention) {
  if (dynamic.tables.empty()) throw ValidationError("static connectedness: empty sequence");
  Eigen::MatrixXd average = Eigen::MatrixXd::Zero(dynamic.tables.front().shares.rows(),
                                                  dynamic.tables.front().shares.cols());
  for (const auto& t : dynamic.tables) average += t.shares;
  average /= static_cast<double>(dynamic.tables.size());
  return BuildTable(NormalizeGfevd(average), dynamic.tables.front().horizon, convention);
}

ConnectednessTable StaticFromConstantVar(const data::TimeSeriesPanel& panel, int lags, int horizon,
                                         ToConvention convention) {
  const Eigen::Index k = panel.cols();
  const Eigen::Index n = panel.rows() - lags;
  const Eigen::Index m = 1 + k * lags;
  if (lags < 1 || n <= m) throw ValidationError("constant VAR: sample too short for lag order");
  Eigen::MatrixXd x(n, m), y = panel.values().bottomRows(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    x(r, 0) = 1.0;
    for (int l = 1; l <= lags; ++l) x.block(r, 1 + (l - 1) * k, 1, k) = panel.values().row(lags + r - l);
  }
  std::vector<Eigen::MatrixXd> b(static_cast<std::size_t>(lags), Eigen::MatrixXd(k, k));
  Eigen::MatrixXd residuals(n, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto fit = linalg::SolveLeastSquares(x, y.col(i));
    residuals.col(i) = fit.residuals;
    for (int l = 1; l <= lags; ++l) b[static_cast<std::size_t>(l - 1)].row(i) = fit.coefficients.segment(1 + (l - 1) * k, k).transpose();
  }
  const Eigen::MatrixXd omega = linalg::Symmetrize(residuals.transpose() * residuals / static_cast<double>(n - m));
  const auto vma = VmaCoefficients(b, horizon);
  return BuildTable(NormalizeGfevd(Gfevd(vma, omega, horizon)), horizon, convention);
}

void WriteStaticCsv(std::ostream& out, const ConnectednessTable& table, const std::vector<std::string>& names) {
  const Eigen::Index k = table.shares.rows();
  out << "market";
  for (const auto& n : names) out << ',' << n;
  out << ",From\n";
  for (Eigen::Index j = 0; j < k; ++j) {
    out << names[static_cast<std::size_t>(j)];
    for (Eigen::Index c = 0; c < k; ++c) out << ',' << FormatFixed(100.0 * table.shares(j, c), 2);
    out << ',' << FormatFixed(table.from[j], 2) << '\n';
  }
  out << "To";
  for (Eigen::Index c = 0; c < k; ++c) out << ',' << FormatFixed(table.to[c], 2);
  out << ',' << FormatFixed(table.tci, 2) << '\n';
}

void WriteDynamicCsv(std::ostream& out, const DynamicConnectedness& dynamic) {
  out << "date,index_type,market,value\n";
  for (std::size_t t = 0; t < dynamic.tables.size(); ++t) {
    const auto date = data::FormatMonth(dynamic.dates[t]);
    const auto& table = dynamic.tables[t];
    out << date << ",TCI,ALL," << FormatDouble(table.tci) << '\n';
    const auto emit = [&](const char* type, const Eigen::VectorXd& v) {
      for (Eigen::Index j = 0; j < v.size(); ++j) {
        out << date << ',' << type << ',' << dynamic.names[static_cast<std::size_t>(j)] << ','
            << FormatDouble(v[j]) << '\n';
      }
    };
    emit("FROM", table.from);
    emit("TO", table.to);
    emit("NET", table.net);
  }
}

void WriteNpdcCsv(std::ostream& out, const DynamicConnectedness& dynamic) {
  out << "date,from,to,npdc\n";
  for (std::size_t t = 0; t < dynamic.tables.size(); ++t) {
    const auto date = data::FormatMonth(dynamic.dates[t]);
    const auto& npdc = dynamic.tables[t].npdc;
    for (Eigen::Index from = 0; from < npdc.rows(); ++from) {
      for (Eigen::Index to = 0; to < npdc.rows(); ++to) {
        if (from == to) continue;
        out << date << ',' << dynamic.names[static_cast<std::size_t>(from)] << ','
            << dynamic.names[static_cast<std::size_t>(to)] << ',' << FormatDouble(npdc(from, to)) << '\n';
      }
    }
  }
}

}  // namespace finres::connectedness
