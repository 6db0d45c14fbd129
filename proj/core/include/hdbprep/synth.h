#pragma once

#include "hdbprep/config.h"
#include "hdbprep/identity.h"
#include "hdbprep/ingest.h"
#include "hdbprep/model.h"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hdbprep {

struct SynthParams {
    std::size_t n_households{50};
    std::size_t n_regions{4};
    std::size_t max_milieux{3};
    std::size_t max_clusters{4};
    std::size_t max_households_per_cluster{6};
    std::size_t max_household_size{9};
    AgeEncoding age_encoding{AgeEncoding::years};
    GenderEncoding gender_encoding{GenderEncoding::male0_female1};
    IncomeMode income_mode{IncomeMode::letters};
    /// Restart household numbering in every cluster instead of numbering across the survey.
    bool renumber_households{false};
    /// Inject a household without chief, one with two chiefs and one with a disagreeing area.
    bool anomalies{false};
    std::uint64_t seed{1};
    double dmp_c{0.5};
    double dmp_s{0.7};
    ScaleKind scaled_with{ScaleKind::oxford};
    PrefixScheme scheme{PrefixScheme::rmch()};
};

/// Throws Error(config_error) if a maximum is zero or the household count is zero.
void validate_synth_params(const SynthParams &params);

struct SynthDatabase {
    std::vector<PersonRecord> persons;
    /// Raw tokens per variable, as they would be written to column files.
    ColumnSet columns;
    /// Known per-household values, in file order.
    std::vector<HouseholdAggregate> ground_truth;
};

/// Persons come out grouped by household. Deterministic for a given parameter set.
SynthDatabase generate(const SynthParams &params);

/// Writes one file per variable, a matching hdbprep.ini and groundtruth.csv into `dir`.
std::vector<std::filesystem::path> write_column_layout(const SynthDatabase &db,
                                                       const SynthParams &params,
                                                       const std::filesystem::path &dir);

/// Writes all variables as one comma-separated table with a header row.
void write_person_table(const SynthDatabase &db, const std::filesystem::path &path);

struct OracleConfig {
    AgeEncoding age_encoding{AgeEncoding::years};
    GenderEncoding gender_encoding{GenderEncoding::male0_female1};
    PrefixScheme scheme{PrefixScheme::rmch()};
    double dmp_c{0.5};
    double dmp_s{0.7};
    ScaleKind scaled_with{ScaleKind::oxford};
};

/// Hash-map group-by over persons in any order, written independently of the streaming
/// reducers. `incomes` is either empty or one entry per person.
std::map<std::string, HouseholdAggregate>
oracle_aggregate(std::span<const PersonRecord> persons,
                 std::span<const std::optional<double>> incomes, const OracleConfig &config);

} // namespace hdbprep
