#include "piezoharvest/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

namespace piezoharvest::fmt {

std::string shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string significant(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";

    char buf[64];
    const double mag = std::abs(value);
    std::to_chars_result res;
    if (mag >= 1e-4 && mag < 1e6) {
        const int exponent = static_cast<int>(std::floor(std::log10(mag)));
        const int decimals = std::max(0, digits - 1 - exponent);
        res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    } else {
        res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, digits - 1);
    }
    return std::string(buf, res.ptr);
}

}  // namespace piezoharvest::fmt
