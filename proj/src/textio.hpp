#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace srk {

// Shortest decimal form that round-trips the double exactly.
std::string format_double(double x);

// Splits one CSV line on commas; no quoting (none of our formats need it).
std::vector<std::string> split_csv_line(const std::string& line);

double parse_double_field(const std::string& field, const std::string& context);

// Opens for writing, throwing IoError with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// 64-bit FNV-1a, printed as 16 hex digits; used for manifest content hashes.
std::string content_hash(const std::string& text);

}  // namespace srk
