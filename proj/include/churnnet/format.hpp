#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace churnnet {

/// Shortest decimal form that parses back to the same double. NaN prints
/// as the empty string.
std::string format_double(double v);

/// Whole-string parses; throw ConfigError naming the offending text.
double parse_double(std::string_view text);
/// Accepts plain integers and integral floating forms such as "1e5".
std::uint64_t parse_uint(std::string_view text);

} // namespace churnnet
