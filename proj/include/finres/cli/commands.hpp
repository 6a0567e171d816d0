#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>

#include "finres/cli/config.hpp"

namespace finres::cli {

/// Each command writes its artifacts under config.out together with a
/// manifest. Failures leave the artifacts written so far, mark the manifest
/// `FAILED` and rethrow.
void RunDescribe(const RunConfig& config);
void RunEstimate(const RunConfig& config);
void RunIrf(const RunConfig& config, const std::filesystem::path& posterior);
void RunResilience(const RunConfig& config, const std::filesystem::path& irf_csv);
/// With a resilience CSV the chosen index (intensity or duration) of every
/// series forms the panel; otherwise config.variables of the input panel.
void RunConnect(const RunConfig& config, const std::filesystem::path& resilience_csv, const std::string& index);
void RunMediate(const RunConfig& config);
void RunPipeline(const RunConfig& config);
/// kind: irf, resilience, dynamic, npdc or summary.
void RunPlotdata(const RunConfig& config, const std::filesystem::path& artifact, const std::string& kind);

/// Writes demo_data.csv and demo.conf, a seeded synthetic dataset with the
/// column roles the pipeline expects.
void RunSynth(const std::filesystem::path& out_dir, std::uint64_t seed);

/// 2 validation, 3 numerical, 4 I/O, 1 anything else.
int ExitCodeFor(const std::exception& error);

}  // namespace finres::cli
