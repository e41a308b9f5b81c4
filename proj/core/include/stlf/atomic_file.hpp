#pragma once

#include <string>
#include <string_view>

namespace stlf {

/// Writes `content` to a temporary file next to `path`, flushes it, and
/// renames it over `path`, so readers never observe a partial file. Missing
/// parent directories are created. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, std::string_view content);

/// Whole file as bytes. Throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace stlf
