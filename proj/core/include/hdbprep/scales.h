#pragma once

#include "hdbprep/model.h"

#include <cstddef>
#include <span>

namespace hdbprep {

/// First adult age under AgeEncoding::years.
inline constexpr double adult_age_years = 15.0;
/// First adult class index under AgeEncoding::five_year_classes.
inline constexpr double adult_age_class = 4.0;

/// Value the legacy tools wrote in place of a weight when an input was out of range.
inline constexpr double paper_error_sentinel = 0.99;

/// A per-person equivalence weight. Only the four scale constants can be represented.
class Weight {
  public:
    static constexpr Weight full() noexcept { return Weight{1.0}; }
    static constexpr Weight female_adult() noexcept { return Weight{0.8}; }
    static constexpr Weight other_adult() noexcept { return Weight{0.7}; }
    static constexpr Weight child() noexcept { return Weight{0.5}; }

    constexpr double value() const noexcept { return value_; }
    constexpr bool operator==(const Weight &) const noexcept = default;

  private:
    constexpr explicit Weight(double value) noexcept : value_{value} {}
    double value_;
};

/// Throws Error(bad_encoding) when `encoding` is not one of the enumerators.
bool classify_adult(const Age &age, AgeEncoding encoding);

/// Oxford scale: child 0.5, adult chief 1, other adult 0.7.
Weight oxford_weight(const Age &age, AgeEncoding encoding, bool is_chief);

/// FAO-OMS scale: child 0.5, adult male 1, adult female 0.8.
Weight faofam_weight(const Age &age, AgeEncoding encoding, Gender gender);

/// (n_adults + c * n_children)^s. Throws Error(empty_household) when both counts are zero and
/// Error(dmp_param_out_of_range) when c or s leaves [0, 1].
double dmp_scale(std::size_t n_adults, std::size_t n_children, double c, double s);

/// Sum of weight_i * income_i. Throws Error(length_mismatch) on unequal or empty inputs.
double household_equivalent_income(std::span<const Weight> weights,
                                   std::span<const double> incomes);

} // namespace hdbprep
