#pragma once

#include "hdbprep/model.h"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdbprep {

/// Letters written in front of each stratum in a canonical household key.
class PrefixScheme {
  public:
    /// Throws Error(config_error) unless the four letters are distinct uppercase ASCII.
    PrefixScheme(char region, char milieu, char cluster, char household);

    /// Region/Milieu/Cluster/Household.
    static PrefixScheme rmch() { return {'R', 'M', 'C', 'H'}; }
    /// The variant whose first prefix is "D".
    static PrefixScheme dmch() { return {'D', 'M', 'C', 'H'}; }

    /// Accepts "RMCH", "R/M/C/H" or "R,M,C,H" spellings.
    static PrefixScheme parse(std::string_view spec);

    char region() const noexcept { return letters_[0]; }
    char milieu() const noexcept { return letters_[1]; }
    char cluster() const noexcept { return letters_[2]; }
    char household() const noexcept { return letters_[3]; }
    std::string_view letters() const noexcept { return {letters_, 4}; }

    bool operator==(const PrefixScheme &) const = default;

  private:
    char letters_[4];
};

/// Concatenates prefix and token for region, milieu, cluster and household, in that order.
/// Throws Error(prefix_collision) if a token contains any of the scheme letters.
HouseholdKey make_household_key(const Strata &strata, const PrefixScheme &scheme);

/// Inverse of make_household_key. Throws Error(malformed_key).
Strata parse_household_key(std::string_view canonical, const PrefixScheme &scheme);

/// One key per person; collisions are reported with the 1-based record number as line.
std::vector<HouseholdKey> identify_stream(std::span<const PersonRecord> records,
                                          const PrefixScheme &scheme);

} // namespace hdbprep
