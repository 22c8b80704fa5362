#include "churnnet/format.hpp"

#include "churnnet/core.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace churnnet {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return {};
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ConfigError("expected a number, got '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view text) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && end == text.data() + text.size() && !text.empty()) {
        return v;
    }
    const double d = parse_double(text);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) {
        throw ConfigError("expected a non-negative whole number, got '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(d);
}

} // namespace churnnet
