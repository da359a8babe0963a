#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bmab {

/// Shortest decimal string that round-trips to `value` (std::to_chars).
/// Locale-independent, so output bytes depend only on the value.
std::string format_number(double value);

/// Splits one CSV line on commas. Fields never contain quotes or commas in
/// the files this library writes, so no quoting is handled.
std::vector<std::string> split_csv_line(std::string_view line);

double parse_double(std::string_view field);
unsigned long long parse_uint(std::string_view field);

}  // namespace bmab
