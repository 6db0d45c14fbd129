#include "hdbprep/model.h"

#include "hdbprep/error.h"
#include "hdbprep/text.h"

namespace hdbprep {

namespace {

std::string checked_token(std::string token, std::string_view field, bool is_strata) {
    const auto trimmed = text::trim(token);
    if (trimmed.empty()) {
        throw Error{ErrorCode::empty_token, "empty " + std::string{field} + " token"};
    }
    if (is_strata && trimmed.find_first_of("\r\n") != std::string_view::npos) {
        throw Error{ErrorCode::empty_token,
                    std::string{field} + " token contains a line break: '" + token + "'"};
    }
    return std::string{trimmed};
}

} // namespace

AgeEncoding age_encoding_from_code(int code) {
    switch (code) {
    case 1: return AgeEncoding::years;
    case 2: return AgeEncoding::five_year_classes;
    default:
        throw Error{ErrorCode::bad_encoding, "age encoding code must be 1 (years) or 2 (classes), got " +
                                                 std::to_string(code)};
    }
}

GenderEncoding gender_encoding_from_code(int code) {
    switch (code) {
    case 1: return GenderEncoding::male0_female1;
    case 2: return GenderEncoding::male1_female2;
    default:
        throw Error{ErrorCode::bad_encoding,
                    "gender encoding code must be 1 (0/1) or 2 (1/2), got " + std::to_string(code)};
    }
}

std::string_view to_string(AgeEncoding encoding) noexcept {
    switch (encoding) {
    case AgeEncoding::years: return "years";
    case AgeEncoding::five_year_classes: return "classes";
    }
    return "invalid";
}

std::string_view to_string(GenderEncoding encoding) noexcept {
    switch (encoding) {
    case GenderEncoding::male0_female1: return "0/1";
    case GenderEncoding::male1_female2: return "1/2";
    }
    return "invalid";
}

std::string_view to_string(ScaleKind kind) noexcept {
    switch (kind) {
    case ScaleKind::oxford: return "oxford";
    case ScaleKind::faofam: return "faofam";
    case ScaleKind::dmp: return "dmp";
    }
    return "invalid";
}

ScaleKind scale_kind_from_string(std::string_view name) {
    if (name == "oxford") {
        return ScaleKind::oxford;
    }
    if (name == "faofam") {
        return ScaleKind::faofam;
    }
    if (name == "dmp") {
        return ScaleKind::dmp;
    }
    throw Error{ErrorCode::config_error,
                "unknown scale '" + std::string{name} + "' (expected oxford, faofam or dmp)"};
}

PersonRecord::PersonRecord(Strata strata, std::string age_raw, std::string gender_raw,
                           std::string poswrchief_raw, std::optional<std::string> income_raw,
                           std::optional<std::string> area_raw)
    : strata_{checked_token(std::move(strata.region), "region", true),
              checked_token(std::move(strata.milieu), "milieu", true),
              checked_token(std::move(strata.cluster), "cluster", true),
              checked_token(std::move(strata.household), "household", true)},
      age_raw_{checked_token(std::move(age_raw), "age", false)},
      gender_raw_{checked_token(std::move(gender_raw), "gender", false)},
      poswrchief_raw_{checked_token(std::move(poswrchief_raw), "poswrchief", false)} {
    if (income_raw) {
        income_raw_ = checked_token(std::move(*income_raw), "income", false);
    }
    if (area_raw) {
        area_raw_ = checked_token(std::move(*area_raw), "area", true);
    }
}

void validate_weight_domain(const ScaleSpec &spec) {
    if (spec.kind != ScaleKind::dmp) {
        return;
    }
    // NaN fails both comparisons
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(spec.dmp_c) || !in_unit(spec.dmp_s)) {
        throw Error{ErrorCode::dmp_param_out_of_range,
                    "DMP parameters must lie in [0,1], got c=" + std::to_string(spec.dmp_c) +
                        " s=" + std::to_string(spec.dmp_s)};
    }
}

} // namespace hdbprep
