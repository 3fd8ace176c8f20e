#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bugforecast::util {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// Splits on any of `separators`, trims each piece and drops empty pieces.
std::vector<std::string> split_list(std::string_view text, std::string_view separators = ",");
std::string join(const std::vector<std::string>& items, std::string_view sep);

/// Shortest decimal text that reads back to exactly the same double.
std::string format_double(double v);
/// Parses a full-string double; throws ValidationError on garbage.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

/// Parses "1..9", "1,2,4" or a mix such as "1..3,6".
std::vector<int> parse_int_list(std::string_view text);

}  // namespace bugforecast::util
