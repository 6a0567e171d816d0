#include "finres/tvpvar/archive.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "finres/error.hpp"
#include "finres/format.hpp"

namespace finres::tvpvar {

namespace {

void WriteMatrix(std::ostream& out, std::string_view name, const Eigen::MatrixXd& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << FormatDouble(m(r, c));
    }
    out << '\n';
  }
}

class Reader {
 public:
  Reader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  std::string Token() {
    std::string token;
    if (!(in_ >> token)) Fail("unexpected end of archive");
    return token;
  }

  void Expect(std::string_view expected) {
    const auto token = Token();
    if (token != expected) Fail("expected '" + std::string(expected) + "', found '" + token + "'");
  }

  long Integer() {
    const auto token = Token();
    try {
      std::size_t used = 0;
      const long v = std::stol(token, &used);
      if (used != token.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      Fail("expected integer, found '" + token + "'");
    }
  }

  double Number() {
    const auto token = Token();
    const auto v = ParseDouble(token);
    if (!v) Fail("expected number, found '" + token + "'");
    return *v;
  }

  long KeyedInteger(std::string_view key) {
    Expect(key);
    return Integer();
  }

  double KeyedNumber(std::string_view key) {
    Expect(key);
    return Number();
  }

  Eigen::MatrixXd Matrix(std::string_view name) {
    Expect("matrix");
    Expect(name);
    const long rows = Integer();
    const long cols = Integer();
    if (rows < 0 || cols < 0) Fail("negative matrix dimension");
    Eigen::MatrixXd m(rows, cols);
    for (long r = 0; r < rows; ++r) {
      for (long c = 0; c < cols; ++c) m(r, c) = Number();
    }
    return m;
  }

  [[noreturn]] void Fail(const std::string& message) {
    throw ValidationError(std::string(source_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::string_view source_;
};

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  if (text == "-") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

void SavePosterior(std::ostream& out, const TvpVarPosterior& posterior, std::string_view comment) {
  const auto& spec = posterior.spec;
  const auto& mcmc = spec.mcmc;
  const auto& pr = spec.priors;
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "finres-posterior 1\n";
  out << "k " << spec.k << '\n' << "lags " << spec.lags << '\n';
  out << "sample_length " << spec.sample_length << '\n';
  out << "draws " << mcmc.draws << '\n' << "burn_in " << mcmc.burn_in << '\n';
  out << "thin " << mcmc.thin << '\n' << "seed " << mcmc.seed << '\n';
  out << "stored_path_draws " << mcmc.stored_path_draws << '\n';
  out << "ig_beta " << FormatDouble(pr.beta_innovation.shape) << ' ' << FormatDouble(pr.beta_innovation.scale) << '\n';
  out << "ig_alpha " << FormatDouble(pr.alpha_innovation.shape) << ' ' << FormatDouble(pr.alpha_innovation.scale) << '\n';
  out << "ig_h " << FormatDouble(pr.h_innovation.shape) << ' ' << FormatDouble(pr.h_innovation.scale) << '\n';
  out << "variables " << Join(posterior.variables, ",") << '\n';
  std::vector<std::string> dates;
  for (const auto& d : posterior.dates) dates.push_back(data::FormatMonth(d));
  out << "dates " << (dates.empty() ? std::string("-") : Join(dates, ",")) << '\n';
  WriteMatrix(out, "prior_mean_beta0", pr.mean_beta0);
  WriteMatrix(out, "prior_cov_beta0", pr.cov_beta0);
  WriteMatrix(out, "prior_mean_alpha0", pr.mean_alpha0);
  WriteMatrix(out, "prior_cov_alpha0", pr.cov_alpha0);
  WriteMatrix(out, "prior_mean_h0", pr.mean_h0);
  WriteMatrix(out, "prior_cov_h0", pr.cov_h0);
  WriteMatrix(out, "mean_beta", posterior.mean_paths.beta);
  WriteMatrix(out, "mean_alpha", posterior.mean_paths.alpha);
  WriteMatrix(out, "mean_h", posterior.mean_paths.h);
  WriteMatrix(out, "innovation_draws", posterior.innovation_draws);
  out << "path_draws " << posterior.path_draws.size() << '\n';
  for (const auto& draw : posterior.path_draws) {
    WriteMatrix(out, "beta", draw.beta);
    WriteMatrix(out, "alpha", draw.alpha);
    WriteMatrix(out, "h", draw.h);
  }
  out << "end\n";
  if (!out) throw IoError("failed writing posterior archive");
}

TvpVarPosterior LoadPosterior(std::istream& in, std::string_view source) {
  // Skip leading comment lines.
  while (in.peek() == '#') {
    std::string ignored;
    std::getline(in, ignored);
  }
  Reader reader(in, source);
  reader.Expect("finres-posterior");
  if (reader.Integer() != 1) reader.Fail("unsupported archive version");

  TvpVarPosterior post;
  auto& spec = post.spec;
  spec.k = static_cast<int>(reader.KeyedInteger("k"));
  spec.lags = static_cast<int>(reader.KeyedInteger("lags"));
  spec.sample_length = static_cast<int>(reader.KeyedInteger("sample_length"));
  spec.mcmc.draws = static_cast<int>(reader.KeyedInteger("draws"));
  spec.mcmc.burn_in = static_cast<int>(reader.KeyedInteger("burn_in"));
  spec.mcmc.thin = static_cast<int>(reader.KeyedInteger("thin"));
  reader.Expect("seed");
  {
    const auto token = reader.Token();
    try {
      spec.mcmc.seed = std::stoull(token);
    } catch (const std::exception&) {
      reader.Fail("bad seed '" + token + "'");
    }
  }
  spec.mcmc.stored_path_draws = static_cast<int>(reader.KeyedInteger("stored_path_draws"));
  if (spec.k < 1 || spec.lags < 1) reader.Fail("invalid model dimensions");
  spec.priors.beta_innovation = {reader.KeyedNumber("ig_beta"), reader.Number()};
  spec.priors.alpha_innovation = {reader.KeyedNumber("ig_alpha"), reader.Number()};
  spec.priors.h_innovation = {reader.KeyedNumber("ig_h"), reader.Number()};
  reader.Expect("variables");
  post.variables = SplitList(reader.Token());
  reader.Expect("dates");
  for (const auto& d : SplitList(reader.Token())) post.dates.push_back(data::ParseMonth(d));

  spec.priors.mean_beta0 = reader.Matrix("prior_mean_beta0");
  spec.priors.cov_beta0 = reader.Matrix("prior_cov_beta0");
  spec.priors.mean_alpha0 = reader.Matrix("prior_mean_alpha0");
  spec.priors.cov_alpha0 = reader.Matrix("prior_cov_alpha0");
  spec.priors.mean_h0 = reader.Matrix("prior_mean_h0");
  spec.priors.cov_h0 = reader.Matrix("prior_cov_h0");

  const int k = spec.k;
  const int s = spec.lags;
  post.mean_paths.k = k;
  post.mean_paths.lags = s;
  post.mean_paths.beta = reader.Matrix("mean_beta");
  post.mean_paths.alpha = reader.Matrix("mean_alpha");
  post.mean_paths.h = reader.Matrix("mean_h");
  const auto n = post.mean_paths.beta.rows();
  const auto check_paths = [&](const ParameterPaths& p) {
    if (p.beta.rows() != n || p.alpha.rows() != n || p.h.rows() != n ||
        p.beta.cols() != BetaSize(k, s) || p.alpha.cols() != AlphaSize(k) || p.h.cols() != k) {
      reader.Fail("parameter path dimensions do not match the header");
    }
  };
  check_paths(post.mean_paths);
  if (static_cast<Eigen::Index>(post.variables.size()) != k) reader.Fail("variable count does not match k");
  if (static_cast<Eigen::Index>(post.dates.size()) != n) reader.Fail("date count does not match periods");

  post.innovation_draws = reader.Matrix("innovation_draws");
  if (post.innovation_draws.cols() != BetaSize(k, s) + AlphaSize(k) + k) {
    reader.Fail("innovation draw width does not match the model");
  }
  post.innovation_labels = InnovationLabels(k, s);
  const long count = reader.KeyedInteger("path_draws");
  if (count < 0) reader.Fail("negative path draw count");
  for (long d = 0; d < count; ++d) {
    ParameterPaths draw;
    draw.k = k;
    draw.lags = s;
    draw.beta = reader.Matrix("beta");
    draw.alpha = reader.Matrix("alpha");
    draw.h = reader.Matrix("h");
    check_paths(draw);
    post.path_draws.push_back(std::move(draw));
  }
  reader.Expect("end");
  if (post.innovation_draws.rows() > 0) post.summary = PosteriorSummary(post);
  return post;
}

TvpVarPosterior LoadPosteriorFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return LoadPosterior(in, path.string());
}

void WriteSummaryCsv(std::ostream& out, const std::vector<DiagnosticsRow>& rows) {
  out << "parameter,mean,sd,lower95,upper95,cd,cd_p_value,ineff\n";
  for (const auto& r : rows) {
    out << r.name << ',' << FormatDouble(r.mean) << ',' << FormatDouble(r.sd) << ','
        << FormatDouble(r.lower95) << ',' << FormatDouble(r.upper95) << ',' << FormatDouble(r.cd)
        << ',' << FormatDouble(r.cd_p_value) << ',' << FormatDouble(r.ineff) << '\n';
  }
}

}  // namespace finres::tvpvar
