#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sgp::bench {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

/// Splits one CSV line (no quoting; fields never contain commas).
std::vector<std::string> split_csv_line(const std::string& line);

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sgp::bench
