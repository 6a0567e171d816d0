#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace finres::cli {

struct ManifestEntry {
  std::string artifact;
  std::string stage;
  std::string sha256;
};

/// Owns an output directory for one run: holds a lock file for its
/// lifetime, writes artifacts with the version/config-hash header line and
/// records each in the manifest.
class OutputDirectory {
 public:
  OutputDirectory(std::filesystem::path root, std::string config_hash);
  ~OutputDirectory();
  OutputDirectory(const OutputDirectory&) = delete;
  OutputDirectory& operator=(const OutputDirectory&) = delete;

  const std::filesystem::path& root() const { return root_; }
  const std::string& config_hash() const { return config_hash_; }
  /// `# finres <version> config_hash=<hash>`
  std::string HeaderLine() const;

  /// Writes root/name as header line + body; returns the full path.
  std::filesystem::path Write(const std::string& name, const std::string& stage,
                              const std::function<void(std::ostream&)>& body);

  const std::vector<ManifestEntry>& entries() const { return entries_; }

  /// Writes manifest.csv. A failed run lists the artifacts written so far
  /// followed by a `FAILED` row with the stage and cause.
  void WriteManifest(const std::string& failed_stage = {}, const std::string& cause = {});

 private:
  std::filesystem::path root_;
  std::string config_hash_;
  std::filesystem::path lock_;
  std::vector<ManifestEntry> entries_;
};

}  // namespace finres::cli
