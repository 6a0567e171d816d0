#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace finres::cli {

/// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

}  // namespace finres::cli
