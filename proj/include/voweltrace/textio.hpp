#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace voweltrace {

// Locale-independent float formatting (std::to_chars under the hood).
std::string format_fixed(double value, int digits);
std::string format_shortest(double value);  // shortest round-trip form

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
// Views into `text`; the caller keeps the buffer alive.
std::vector<std::string_view> split_lines(std::string_view text);

// Strict numeric parsing; `context` names the value in error messages.
double parse_double(std::string_view s, std::string_view context);
std::int64_t parse_int(std::string_view s, std::string_view context);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace voweltrace
