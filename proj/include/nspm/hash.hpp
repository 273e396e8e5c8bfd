#pragma once

#include <filesystem>
#include <string>

namespace nspm {

/// Hex-encoded SHA-256.
std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace nspm
