#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "finres/tvpvar/sampler.hpp"

namespace finres::tvpvar {

/// Text archive. Layout:
///
///   finres-posterior 1
///   <key> <value>                     header: k, lags, sample_length, MCMC
///   ...                               settings, seed, IG priors
///   variables <comma list>
///   dates <comma list>
///   matrix <name> <rows> <cols>       then `rows` lines of `cols` values
///   ...                               (row-major)
///   path_draws <count>                then beta/alpha/h matrices per draw
///   end
///
/// Matrices: prior_mean_beta0 … prior_cov_h0, mean_beta, mean_alpha, mean_h,
/// innovation_draws. Numbers use shortest round-trip text, so a load
/// reproduces the saved posterior bit for bit. The summary table is
/// recomputed on load.
void SavePosterior(std::ostream& out, const TvpVarPosterior& posterior, std::string_view comment = {});
TvpVarPosterior LoadPosterior(std::istream& in, std::string_view source = "<archive>");
TvpVarPosterior LoadPosteriorFile(const std::filesystem::path& path);

/// CSV `parameter,mean,sd,lower95,upper95,cd,cd_p_value,ineff`.
void WriteSummaryCsv(std::ostream& out, const std::vector<DiagnosticsRow>& rows);

}  // namespace finres::tvpvar
