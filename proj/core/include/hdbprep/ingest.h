#pragma once

#include "hdbprep/model.h"

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hdbprep {

/// Person-level variables that can be read from a survey export. `area` is an optional
/// label column; when absent the region doubles as the area label.
enum class Variable { region, milieu, cluster, household, age, gender, poswrchief, income, area };

std::string_view to_string(Variable variable) noexcept;
Variable variable_from_string(std::string_view name);

inline constexpr Variable required_variables[] = {
    Variable::region, Variable::milieu, Variable::cluster,   Variable::household,
    Variable::age,    Variable::gender, Variable::poswrchief};

/// One variable stored as a plain text file, one token per line.
struct ColumnSource {
    std::filesystem::path path;
    Variable variable{Variable::region};
};

/// All variables stored in one delimited table with a header row.
struct TableSource {
    std::filesystem::path path;
    char delimiter{','};
    std::map<Variable, std::string> column_map;
};

using ColumnSet = std::map<Variable, std::vector<std::string>>;

/// Splits column-file text into trimmed tokens. A leading BOM is dropped, LF and CRLF are both
/// accepted, trailing blank lines are ignored and an interior blank line is an error. The first
/// `skip_header` lines are discarded before anything else.
std::vector<std::string> split_column_text(std::string_view content, std::size_t skip_header = 0);

std::vector<std::string> read_column_file(const ColumnSource &source, std::size_t skip_header = 0);

/// Builds record i from token i of every column. Income and area columns are optional.
std::vector<PersonRecord> zip_columns(const ColumnSet &columns);

/// Splits one delimited line. A field may be wrapped in double quotes, inside which a doubled
/// quote stands for a literal one and the delimiter loses its meaning.
std::vector<std::string> split_delimited_line(std::string_view line, char delimiter);

std::vector<PersonRecord> read_table(const TableSource &source);

/// Under years any non-negative decimal is accepted; under five-year classes a positive integer.
/// With the strict policy the code 99 (years) is flagged as missing.
Age parse_age(std::string_view raw, AgeEncoding encoding,
              MissingAgePolicy policy = MissingAgePolicy::paper_compat);

Gender parse_gender(std::string_view raw, GenderEncoding encoding);

/// Reads a whole file into memory, throwing Error(io_error) on failure.
std::string read_text_file(const std::filesystem::path &path);

} // namespace hdbprep
