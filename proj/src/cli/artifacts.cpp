#include "finres/cli/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "finres/cli/config.hpp"
#include "finres/cli/digest.hpp"
#include "finres/error.hpp"

namespace finres::cli {

namespace {

constexpr const char* kLockName = ".finres.lock";

void WriteBytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << bytes;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string CsvCell(std::string text) {
  for (auto& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
  }
  return text;
}

}  // namespace

OutputDirectory::OutputDirectory(std::filesystem::path root, std::string config_hash)
    : root_(std::move(root)), config_hash_(std::move(config_hash)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw IoError("cannot create output directory " + root_.string() + ": " + ec.message());
  lock_ = root_ / kLockName;
  std::FILE* f = std::fopen(lock_.c_str(), "wx");
  if (f == nullptr) {
    throw IoError("output directory " + root_.string() + " is locked by another run (remove " + lock_.string() +
                  " if no run is active)");
  }
  std::fclose(f);
}

OutputDirectory::~OutputDirectory() {
  std::error_code ec;
  std::filesystem::remove(lock_, ec);
}

std::string OutputDirectory::HeaderLine() const {
  return "# finres " + std::string(Version()) + " config_hash=" + config_hash_;
}

std::filesystem::path OutputDirectory::Write(const std::string& name, const std::string& stage,
                                             const std::function<void(std::ostream&)>& body) {
  std::ostringstream text;
  text << HeaderLine() << '\n';
  body(text);
  const std::string bytes = text.str();
  const auto path = root_ / name;
  WriteBytes(path, bytes);
  entries_.push_back({name, stage, Sha256Hex(bytes)});
  return path;
}

void OutputDirectory::WriteManifest(const std::string& failed_stage, const std::string& cause) {
  std::ostringstream text;
  text << HeaderLine() << '\n';
  text << "artifact,stage,sha256\n";
  for (const auto& e : entries_) text << e.artifact << ',' << e.stage << ',' << e.sha256 << '\n';
  if (!failed_stage.empty()) text << "FAILED," << CsvCell(failed_stage) << ',' << CsvCell(cause) << '\n';
  WriteBytes(root_ / "manifest.csv", text.str());
}

}  // namespace finres::cli
