#pragma once

#include "hdbprep/aggregate.h"
#include "hdbprep/config.h"
#include "hdbprep/model.h"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdbprep {

// Output file names, one value per line.
inline constexpr std::string_view identhousehold_file = "identhousehold.txt";
inline constexpr std::string_view monthlyincome_file = "monthlyincome.txt";
inline constexpr std::string_view scaleoxford_file = "scaleoxford.txt";
inline constexpr std::string_view scalefaofam_file = "scalefaofam.txt";
inline constexpr std::string_view sizehousehold_file = "sizehousehold.txt";
inline constexpr std::string_view totalincome_file = "totalincome.txt";
inline constexpr std::string_view labelregion_file = "labelregion.txt";
inline constexpr std::string_view labelgender_file = "labelgender.txt";
inline constexpr std::string_view households_table_file = "households.csv";

/// "scaleDMP-<c>-<s>.txt" with both parameters in the output number format.
std::string dmp_file_name(double c, double s);

/// Person-level data after ingestion, identification and income recoding.
struct PreparedData {
    std::vector<PersonRecord> persons;
    /// Source line of each person (1-based, header lines counted).
    std::vector<std::size_t> lines;
    std::vector<HouseholdKey> keys;
    /// Per-person income; empty when no income is configured.
    std::vector<std::optional<double>> incomes;
    /// Rows handed to the reducers, stably sorted by key when sorting is enabled.
    std::vector<KeyedMember> rows;
};

struct RunReport {
    std::size_t persons{};
    std::size_t households{};
    Diagnostics warnings;
    std::vector<std::filesystem::path> outputs;
    std::vector<std::string> skipped;
};

void print_report(std::ostream &out, const RunReport &report);

/// The household-level files the legacy tools produced one pass at a time.
enum class Pass { oxford, faofam, dmp, size, income, area, chief };

std::string_view to_string(Pass pass) noexcept;
Pass pass_from_string(std::string_view name);

/// Reads the configured inputs, builds keys and incomes. Errors are tagged with their stage.
PreparedData prepare(const PipelineConfig &config);

AggregateConfig aggregate_config(const PipelineConfig &config);

/// total_income / scale. Throws Error(zero_scale) unless scale > 0.
double scaled_income(double total_income, double scale);

/// Writes households.csv with one row per aggregate, in order.
void write_household_table(std::span<const HouseholdAggregate> aggregates,
                           const std::filesystem::path &path);

/// Writes one line per value, truncating any existing file.
void write_lines(const std::filesystem::path &path, std::span<const std::string> lines);

/// identify: writes identhousehold.txt.
RunReport run_identify(const PipelineConfig &config);

/// recode-income: writes monthlyincome.txt.
RunReport run_recode_income(const PipelineConfig &config);

/// aggregate: runs each requested pass separately over materialised household runs and writes
/// that pass's file.
RunReport run_passes(const PipelineConfig &config, std::span<const Pass> passes);

/// run: every stage in one fused pass; writes all per-variable files and households.csv.
RunReport run_pipeline(const PipelineConfig &config);

} // namespace hdbprep
