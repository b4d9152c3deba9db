#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cspread {

/// Lower-case hex SHA-256 of a byte string.
[[nodiscard]] std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a file's contents; throws DataError when unreadable.
[[nodiscard]] std::string file_sha256(const std::filesystem::path& path);

}  // namespace cspread
