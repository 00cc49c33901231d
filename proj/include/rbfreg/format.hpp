#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace rbfreg {

/// Locale-independent "%.<digits>g" formatting.
std::string format_sig(double value, int digits = 9);

/// Locale-independent fixed-point formatting with `decimals` places.
std::string format_fixed(double value, int decimals = 6);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace rbfreg
