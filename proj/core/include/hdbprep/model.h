#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace hdbprep {

/// How raw age tokens are coded. The numeric values are the codes used in configuration files.
enum class AgeEncoding { years = 1, five_year_classes = 2 };

/// How raw gender tokens are coded, male code first.
enum class GenderEncoding { male0_female1 = 1, male1_female2 = 2 };

/// Treatment of the reserved "unknown age" code 99 under AgeEncoding::years.
enum class MissingAgePolicy { paper_compat, strict };

enum class Gender { male, female };

enum class ScaleKind { oxford, faofam, dmp };

/// Throws Error(bad_encoding) for anything but 1 or 2.
AgeEncoding age_encoding_from_code(int code);
GenderEncoding gender_encoding_from_code(int code);

std::string_view to_string(AgeEncoding encoding) noexcept;
std::string_view to_string(GenderEncoding encoding) noexcept;
std::string_view to_string(ScaleKind kind) noexcept;
ScaleKind scale_kind_from_string(std::string_view name);

struct Age {
    double value{};
    bool missing{false};
};

struct Strata {
    std::string region;
    std::string milieu;
    std::string cluster;
    std::string household;

    bool operator==(const Strata &) const = default;
};

/// One survey respondent. Tokens are kept verbatim (trimmed) until a stage parses them.
class PersonRecord {
  public:
    /// Rejects empty tokens (after trimming) and strata tokens holding line breaks.
    PersonRecord(Strata strata, std::string age_raw, std::string gender_raw,
                 std::string poswrchief_raw, std::optional<std::string> income_raw = std::nullopt,
                 std::optional<std::string> area_raw = std::nullopt);

    const Strata &strata() const noexcept { return strata_; }
    const std::string &region() const noexcept { return strata_.region; }
    const std::string &milieu() const noexcept { return strata_.milieu; }
    const std::string &cluster() const noexcept { return strata_.cluster; }
    const std::string &household() const noexcept { return strata_.household; }
    const std::string &age_raw() const noexcept { return age_raw_; }
    const std::string &gender_raw() const noexcept { return gender_raw_; }
    const std::string &poswrchief_raw() const noexcept { return poswrchief_raw_; }
    const std::optional<std::string> &income_raw() const noexcept { return income_raw_; }

    /// Area label token; falls back to the region when no separate area column was read.
    const std::string &area() const noexcept { return area_raw_ ? *area_raw_ : strata_.region; }

    /// Only the token "1" marks the household chief.
    bool is_chief() const noexcept { return poswrchief_raw_ == "1"; }

    bool operator==(const PersonRecord &) const = default;

  private:
    Strata strata_;
    std::string age_raw_;
    std::string gender_raw_;
    std::string poswrchief_raw_;
    std::optional<std::string> income_raw_;
    std::optional<std::string> area_raw_;
};

/// Canonical household identifier. Built by make_household_key (identity.h).
class HouseholdKey {
  public:
    HouseholdKey() = default;
    HouseholdKey(std::string canonical, Strata components)
        : canonical_{std::move(canonical)}, components_{std::move(components)} {}

    const std::string &canonical() const noexcept { return canonical_; }
    const Strata &components() const noexcept { return components_; }

    bool operator==(const HouseholdKey &other) const noexcept {
        return canonical_ == other.canonical_;
    }
    auto operator<=>(const HouseholdKey &other) const noexcept {
        return canonical_ <=> other.canonical_;
    }

  private:
    std::string canonical_;
    Strata components_;
};

struct ScaleSpec {
    ScaleKind kind{ScaleKind::oxford};
    double dmp_c{0.5};
    double dmp_s{0.7};
};

/// Throws Error(dmp_param_out_of_range) when a DMP parameter lies outside [0, 1].
void validate_weight_domain(const ScaleSpec &spec);

struct HouseholdAggregate {
    HouseholdKey key;
    std::size_t size{};
    std::size_t n_adults{};
    std::size_t n_children{};
    double scale_oxford{};
    double scale_faofam{};
    double scale_dmp{};
    std::optional<double> total_income;
    std::string label_area;
    std::string label_chief_gender;
    std::optional<double> scaled_income;
};

inline constexpr std::string_view no_chief_label = "XXX";

} // namespace hdbprep

template <> struct std::hash<hdbprep::HouseholdKey> {
    std::size_t operator()(const hdbprep::HouseholdKey &key) const noexcept {
        return std::hash<std::string>{}(key.canonical());
    }
};
