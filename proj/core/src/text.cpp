#include "hdbprep/text.h"

#include <charconv>
#include <cmath>

namespace hdbprep::text {

namespace {
constexpr std::string_view whitespace = " \t\r\n\v\f";
constexpr std::string_view utf8_bom = "\xEF\xBB\xBF";
} // namespace

std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(whitespace);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(whitespace);
    return s.substr(first, last - first + 1);
}

std::string_view strip_bom(std::string_view s) noexcept {
    if (s.starts_with(utf8_bom)) {
        s.remove_prefix(utf8_bom.size());
    }
    return s;
}

std::optional<double> parse_number(std::string_view token) noexcept {
    if (token.starts_with('+')) {
        token.remove_prefix(1);
    }
    if (token.empty()) {
        return std::nullopt;
    }
    auto value = 0.0;
    const auto *end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

} // namespace hdbprep::text
