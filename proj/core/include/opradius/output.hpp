#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace opradius {

/// Shortest-safe rendering with 17 significant digits, '.' decimal point,
/// independent of the global locale.
std::string format_double(double x);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace opradius
