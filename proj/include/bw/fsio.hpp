#pragma once

#include <string>

namespace bw {

// Write-then-rename so readers never observe a partial file. Raises
// errc::io_error on any filesystem failure.
void write_file_atomic(const std::string& path, const std::string& content);

// Whole file as a string. Raises errc::io_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace bw
