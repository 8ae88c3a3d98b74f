#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace areatrap::textio {

// Shortest decimal string that round-trips to the same double. This is the
// cross-platform reproducibility contract for every file the toolkit writes.
std::string format_double(double v);
std::string format_u64(std::uint64_t v);
std::string format_i64(std::int64_t v);

// Strict parsers: the whole token must be consumed.
double parse_double(std::string_view token, const std::string& context);
std::uint64_t parse_u64(std::string_view token, const std::string& context);
std::int64_t parse_i64(std::string_view token, const std::string& context);

std::vector<std::string_view> split(std::string_view line, char sep);

// Reads a whole file; io-error if unreadable.
std::string read_file(const std::string& path);

// Writes atomically-ish (truncate + flush); io-error on failure.
void write_file(const std::string& path, std::string_view content);

} // namespace areatrap::textio
