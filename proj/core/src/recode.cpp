#include "hdbprep/recode.h"

#include "hdbprep/error.h"
#include "hdbprep/text.h"

#include <cmath>

namespace hdbprep {

void IncomeRangeMap::add(std::string code, double amount) {
    const auto trimmed = std::string{text::trim(code)};
    if (trimmed.empty()) {
        throw Error{ErrorCode::config_error, "blank income code"};
    }
    if (!std::isfinite(amount) || amount < 0.0) {
        throw Error{ErrorCode::config_error,
                    "income amount for '" + trimmed + "' must be a non-negative number"};
    }
    if (find(trimmed)) {
        throw Error{ErrorCode::config_error, "duplicate income code '" + trimmed + "'"};
    }
    entries_.emplace_back(trimmed, amount);
}

void IncomeRangeMap::set_default(std::optional<double> amount) {
    if (amount && (!std::isfinite(*amount) || *amount < 0.0)) {
        throw Error{ErrorCode::config_error, "default income amount must be non-negative"};
    }
    default_amount_ = amount;
}

std::optional<double> IncomeRangeMap::find(std::string_view code) const noexcept {
    for (const auto &[key, amount] : entries_) {
        if (key == code) {
            return amount;
        }
    }
    return std::nullopt;
}

IncomeRangeMap elim1_default_map(bool paper_literal) {
    auto map = IncomeRangeMap{};
    map.add("A", 29000.0 / 2);
    map.add("B", (29000.0 + 50000.0) / 2);
    map.add("C", (50000.0 + 100000.0) / 2);
    map.add("D", (100000.0 + 150000.0) / 2);
    map.add("E", (150000.0 + 200000.0) / 2);
    map.add("F", paper_literal ? (200000.0 + 30000.0) / 2 : (200000.0 + 300000.0) / 2);
    map.add("G", (300000.0 + 500000.0) / 2);
    map.add("H", (500000.0 + 750000.0) / 2);
    if (!paper_literal) {
        map.add("I", (750000.0 + 1000000.0) / 2);
    }
    map.add("U", (750000.0 + 1000000.0) / 2);
    map.add("J", (1000000.0 + 1500000.0) / 2);
    map.add("K", (1500000.0 + 2500000.0) / 2);
    map.add("L", (2500000.0 + 3500000.0) / 2);
    if (paper_literal) {
        map.set_default(0.0);
    }
    return map;
}

double income_from_letter(std::string_view token, const IncomeRangeMap &map) {
    const auto code = text::trim(token);
    if (const auto amount = map.find(code)) {
        return *amount;
    }
    if (map.default_amount()) {
        return *map.default_amount();
    }
    throw Error{ErrorCode::unknown_income_code, "unmapped income code '" + std::string{code} + "'"};
}

std::vector<double> recode_stream(std::span<const std::string> tokens, const IncomeRangeMap &map) {
    auto amounts = std::vector<double>{};
    amounts.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        try {
            amounts.push_back(income_from_letter(tokens[i], map));
        } catch (const Error &e) {
            throw e.with_line(i + 1);
        }
    }
    return amounts;
}

} // namespace hdbprep
