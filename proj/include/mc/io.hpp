#pragma once

#include <string>

namespace mc {

/// Reads a whole file; throws std::runtime_error on failure.
std::string read_text_file(const std::string& path);

/// Writes via a temporary file in the same directory and renames over the
/// target, so readers never observe a half-written file.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mc
