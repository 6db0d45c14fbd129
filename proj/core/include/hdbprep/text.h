#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hdbprep::text {

/// Strips ASCII whitespace (space, tab, CR, LF, VT, FF) from both ends.
std::string_view trim(std::string_view s) noexcept;

/// Removes a leading UTF-8 byte-order mark, if any.
std::string_view strip_bom(std::string_view s) noexcept;

/// Parses the whole token as a finite decimal number. Leading '+' is accepted.
std::optional<double> parse_number(std::string_view token) noexcept;

} // namespace hdbprep::text
