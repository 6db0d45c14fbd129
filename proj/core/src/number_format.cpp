#include "hdbprep/number_format.h"

#include <array>
#include <charconv>
#include <cmath>

namespace hdbprep {

namespace {

constexpr int max_significant_digits = 12;

// Integers up to 2^53 are exact in a double and print as integers.
constexpr double exact_integer_limit = 9007199254740992.0;

// Outside this range non-integers use scientific notation.
constexpr double fixed_lower = 1e-6;
constexpr double fixed_upper = 1e15;

std::string to_chars_string(double value, std::chars_format format, int precision) {
    auto buffer = std::array<char, 400>{};
    const auto result = precision < 0
                            ? std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                            format)
                            : std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                            format, precision);
    return std::string{buffer.data(), result.ptr};
}

int significant_digits(const std::string &decimal) {
    auto digits = 0;
    auto leading = true;
    for (const auto ch : decimal) {
        if (ch == 'e' || ch == 'E') {
            break;
        }
        if (ch < '0' || ch > '9') {
            continue;
        }
        if (leading && ch == '0') {
            continue;
        }
        leading = false;
        ++digits;
    }
    return digits;
}

} // namespace

std::string format_number(double value) {
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    if (value == 0.0) {
        return "0";
    }
    if (std::trunc(value) == value && std::fabs(value) < exact_integer_limit) {
        return to_chars_string(value, std::chars_format::fixed, 0);
    }
    auto rounded = value;
    if (significant_digits(to_chars_string(value, std::chars_format::scientific, -1)) >
        max_significant_digits) {
        const auto text =
            to_chars_string(value, std::chars_format::scientific, max_significant_digits - 1);
        std::from_chars(text.data(), text.data() + text.size(), rounded);
    }
    if (std::trunc(rounded) == rounded && std::fabs(rounded) < exact_integer_limit) {
        return to_chars_string(rounded, std::chars_format::fixed, 0);
    }
    const auto magnitude = std::fabs(rounded);
    const auto format = magnitude >= fixed_lower && magnitude < fixed_upper
                            ? std::chars_format::fixed
                            : std::chars_format::scientific;
    return to_chars_string(rounded, format, -1);
}

} // namespace hdbprep
