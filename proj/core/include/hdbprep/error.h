#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hdbprep {

enum class ErrorCode {
    // configuration / environment
    io_error,
    config_error,
    bad_encoding,
    dmp_param_out_of_range,
    missing_column,
    // data
    empty_file,
    blank_line,
    empty_token,
    length_mismatch,
    row_arity_mismatch,
    bad_age_token,
    bad_gender_token,
    bad_income_token,
    prefix_collision,
    malformed_key,
    empty_household,
    unknown_income_code,
    non_consecutive_key,
    missing_income,
    zero_scale,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that describe the input data rather than the environment or configuration.
bool is_data_error(ErrorCode code) noexcept;

/// Every failure in the library is reported through this type. `line` is the 1-based
/// source line of the offending record, or 0 when the failure is not tied to a line.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message, std::size_t line = 0);

    ErrorCode code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    const std::string &stage() const noexcept { return stage_; }
    /// Message without the code, stage and line decorations.
    const std::string &detail() const noexcept { return detail_; }

    /// Returns a copy tagged with the pipeline stage that raised it.
    Error with_stage(std::string stage) const;
    Error with_line(std::size_t line) const;

  private:
    ErrorCode code_;
    std::size_t line_;
    std::string stage_;
    std::string detail_;
};

} // namespace hdbprep
