#include "hdbprep/identity.h"

#include "hdbprep/error.h"

#include <algorithm>
#include <array>

namespace hdbprep {

PrefixScheme::PrefixScheme(char region, char milieu, char cluster, char household)
    : letters_{region, milieu, cluster, household} {
    for (std::size_t i = 0; i < 4; ++i) {
        if (letters_[i] < 'A' || letters_[i] > 'Z') {
            throw Error{ErrorCode::config_error,
                        "prefix letters must be uppercase ASCII, got '" + std::string{letters()} +
                            "'"};
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (letters_[i] == letters_[j]) {
                throw Error{ErrorCode::config_error,
                            "prefix letters must be distinct, got '" + std::string{letters()} +
                                "'"};
            }
        }
    }
}

PrefixScheme PrefixScheme::parse(std::string_view spec) {
    auto letters = std::string{};
    for (auto ch : spec) {
        if (ch == '/' || ch == ',' || ch == ' ') {
            continue;
        }
        letters += ch;
    }
    if (letters.size() != 4) {
        throw Error{ErrorCode::config_error,
                    "prefix scheme needs exactly four letters, got '" + std::string{spec} + "'"};
    }
    return {letters[0], letters[1], letters[2], letters[3]};
}

HouseholdKey make_household_key(const Strata &strata, const PrefixScheme &scheme) {
    const auto tokens = std::array<const std::string *, 4>{&strata.region, &strata.milieu,
                                                           &strata.cluster, &strata.household};
    auto canonical = std::string{};
    canonical.reserve(4 + strata.region.size() + strata.milieu.size() + strata.cluster.size() +
                      strata.household.size());
    for (std::size_t i = 0; i < 4; ++i) {
        const auto &token = *tokens[i];
        if (token.empty()) {
            throw Error{ErrorCode::empty_token, "empty strata token"};
        }
        if (token.find_first_of(scheme.letters()) != std::string::npos) {
            throw Error{ErrorCode::prefix_collision,
                        "strata token '" + token + "' contains one of the prefix letters " +
                            std::string{scheme.letters()}};
        }
        canonical += scheme.letters()[i];
        canonical += token;
    }
    return HouseholdKey{std::move(canonical), strata};
}

Strata parse_household_key(std::string_view canonical, const PrefixScheme &scheme) {
    const auto letters = scheme.letters();
    auto parts = std::array<std::string, 4>{};
    auto pos = std::size_t{0};
    for (std::size_t i = 0; i < 4; ++i) {
        if (pos >= canonical.size() || canonical[pos] != letters[i]) {
            throw Error{ErrorCode::malformed_key, "expected prefix '" + std::string(1, letters[i]) +
                                                      "' in key '" + std::string{canonical} + "'"};
        }
        ++pos;
        const auto next = i + 1 < 4 ? canonical.find_first_of(letters, pos) : canonical.size();
        const auto end = next == std::string_view::npos ? canonical.size() : next;
        if (i + 1 < 4 && (end == canonical.size() || canonical[end] != letters[i + 1])) {
            throw Error{ErrorCode::malformed_key, "prefixes out of order or missing in key '" +
                                                      std::string{canonical} + "'"};
        }
        if (end == pos) {
            throw Error{ErrorCode::malformed_key,
                        "empty component in key '" + std::string{canonical} + "'"};
        }
        parts[i] = std::string{canonical.substr(pos, end - pos)};
        pos = end;
    }
    if (parts[3].find_first_of(letters) != std::string::npos) {
        throw Error{ErrorCode::malformed_key,
                    "trailing prefix letter in key '" + std::string{canonical} + "'"};
    }
    return Strata{std::move(parts[0]), std::move(parts[1]), std::move(parts[2]),
                  std::move(parts[3])};
}

std::vector<HouseholdKey> identify_stream(std::span<const PersonRecord> records,
                                          const PrefixScheme &scheme) {
    auto keys = std::vector<HouseholdKey>{};
    keys.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        try {
            keys.push_back(make_household_key(records[i].strata(), scheme));
        } catch (const Error &e) {
            throw e.with_line(i + 1);
        }
    }
    return keys;
}

} // namespace hdbprep
