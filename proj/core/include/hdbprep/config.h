#pragma once

#include "hdbprep/identity.h"
#include "hdbprep/ingest.h"
#include "hdbprep/model.h"
#include "hdbprep/recode.h"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace hdbprep {

enum class InputFormat { columns, table };

enum class IncomeMode { none, numeric, letters };

std::string_view to_string(IncomeMode mode) noexcept;
IncomeMode income_mode_from_string(std::string_view name);
MissingAgePolicy missing_age_policy_from_string(std::string_view name);
AgeEncoding age_encoding_from_string(std::string_view name);
GenderEncoding gender_encoding_from_string(std::string_view name);

/// Everything one pipeline run needs. Paths are absolute or relative to the working directory;
/// load_config resolves relative paths against the configuration file's directory.
struct PipelineConfig {
    InputFormat input_format{InputFormat::columns};
    std::map<Variable, std::filesystem::path> column_files;
    /// Numeric columns added to each person's income (expense categories and the like).
    std::vector<std::filesystem::path> extra_income_files;
    std::size_t skip_header{0};
    TableSource table;

    PrefixScheme scheme{PrefixScheme::rmch()};
    AgeEncoding age_encoding{AgeEncoding::years};
    GenderEncoding gender_encoding{GenderEncoding::male0_female1};
    MissingAgePolicy missing_age{MissingAgePolicy::paper_compat};

    IncomeMode income_mode{IncomeMode::none};
    /// Overrides the ELIM1 preset when set.
    std::optional<IncomeRangeMap> income_map;
    std::optional<double> income_default;

    bool paper_literal{false};
    bool paper_sentinel{false};
    bool sort{false};

    std::vector<ScaleKind> scales{ScaleKind::oxford, ScaleKind::faofam, ScaleKind::dmp};
    double dmp_c{0.5};
    double dmp_s{0.7};
    ScaleKind scaled_with{ScaleKind::oxford};

    std::filesystem::path out_dir{"out"};
};

/// Parses the sectioned key = value format documented in docs/config.md.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path &base_dir);

PipelineConfig load_config(const std::filesystem::path &path);

/// Checks cross-field constraints. Throws Error(config_error) or Error(dmp_param_out_of_range).
void validate_config(const PipelineConfig &config);

/// The income map in effect: the configured one, else the ELIM1 preset for the literal flag.
IncomeRangeMap effective_income_map(const PipelineConfig &config);

/// Default file name of each variable in the column layout.
std::string_view default_column_file(Variable variable) noexcept;

} // namespace hdbprep
