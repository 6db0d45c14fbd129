#include "hdbprep/error.h"

namespace hdbprep {

namespace {

std::string compose(ErrorCode code, const std::string &stage, std::size_t line,
                    const std::string &detail) {
    auto text = std::string{};
    if (!stage.empty()) {
        text += "[" + stage + "] ";
    }
    text += std::string{to_string(code)};
    if (line != 0) {
        text += " at line " + std::to_string(line);
    }
    text += ": " + detail;
    return text;
}

} // namespace

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::io_error: return "IO_ERROR";
    case ErrorCode::config_error: return "CONFIG_ERROR";
    case ErrorCode::bad_encoding: return "BAD_ENCODING";
    case ErrorCode::dmp_param_out_of_range: return "DMP_PARAM_OUT_OF_RANGE";
    case ErrorCode::missing_column: return "MISSING_COLUMN";
    case ErrorCode::empty_file: return "EMPTY_FILE";
    case ErrorCode::blank_line: return "BLANK_LINE";
    case ErrorCode::empty_token: return "EMPTY_TOKEN";
    case ErrorCode::length_mismatch: return "LENGTH_MISMATCH";
    case ErrorCode::row_arity_mismatch: return "ROW_ARITY_MISMATCH";
    case ErrorCode::bad_age_token: return "BAD_AGE_TOKEN";
    case ErrorCode::bad_gender_token: return "BAD_GENDER_TOKEN";
    case ErrorCode::bad_income_token: return "BAD_INCOME_TOKEN";
    case ErrorCode::prefix_collision: return "PREFIX_COLLISION";
    case ErrorCode::malformed_key: return "MALFORMED_KEY";
    case ErrorCode::empty_household: return "EMPTY_HOUSEHOLD";
    case ErrorCode::unknown_income_code: return "UNKNOWN_INCOME_CODE";
    case ErrorCode::non_consecutive_key: return "NON_CONSECUTIVE_KEY";
    case ErrorCode::missing_income: return "MISSING_INCOME";
    case ErrorCode::zero_scale: return "ZERO_SCALE";
    }
    return "UNKNOWN";
}

bool is_data_error(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::config_error:
    case ErrorCode::bad_encoding:
    case ErrorCode::dmp_param_out_of_range:
    case ErrorCode::missing_column:
        return false;
    default:
        return true;
    }
}

Error::Error(ErrorCode code, const std::string &message, std::size_t line)
    : std::runtime_error{compose(code, {}, line, message)}, code_{code}, line_{line},
      detail_{message} {}

Error Error::with_stage(std::string stage) const {
    auto copy = Error{code_, detail_, line_};
    copy.stage_ = std::move(stage);
    static_cast<std::runtime_error &>(copy) =
        std::runtime_error{compose(code_, copy.stage_, line_, detail_)};
    return copy;
}

Error Error::with_line(std::size_t line) const {
    auto copy = Error{code_, detail_, line};
    if (!stage_.empty()) {
        return copy.with_stage(stage_);
    }
    return copy;
}

} // namespace hdbprep
