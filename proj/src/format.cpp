#include "bincs/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace bincs {

namespace {

std::string special(double value) {
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_sig(double value, int digits) {
    if (!std::isfinite(value)) return special(value);
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, digits);
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
    if (!std::isfinite(value)) return special(value);
    std::array<char, 128> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed, decimals);
    return std::string(buf.data(), ptr);
}

}  // namespace bincs
