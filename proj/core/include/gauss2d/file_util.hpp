#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace gauss2d {

/// Lower-case hex SHA-256 of a byte buffer.
std::string sha256_hex(std::span<const std::byte> bytes);
std::string sha256_hex(std::string_view text);

/// Writes to "<path>.partial" then renames over path. On any failure the
/// partial file is removed and IoError is thrown; path is never left truncated.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

/// Throws IoError if the file cannot be opened or read.
std::string read_file(const std::filesystem::path& path);

}  // namespace gauss2d
