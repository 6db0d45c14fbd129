#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hdbprep {

/// Categorical income codes mapped to a representative amount, usually the range midpoint.
class IncomeRangeMap {
  public:
    /// Throws Error(config_error) for a duplicate or blank code, or a negative/non-finite amount.
    void add(std::string code, double amount);
    void set_default(std::optional<double> amount);

    std::optional<double> find(std::string_view code) const noexcept;
    const std::optional<double> &default_amount() const noexcept { return default_amount_; }
    const std::vector<std::pair<std::string, double>> &entries() const noexcept {
        return entries_;
    }
    bool empty() const noexcept { return entries_.empty(); }

  private:
    std::vector<std::pair<std::string, double>> entries_;
    std::optional<double> default_amount_;
};

/// ELIM1 (Mali) monthly income ranges A..L.
///
/// The literal variant reproduces the legacy arithmetic exactly, including the F range computed
/// as (200000 + 30000) / 2, the code "U" standing where "I" belongs, and 0 for any unknown code.
/// The corrected variant uses 250000 for F, accepts both "I" and "U", and has no default.
IncomeRangeMap elim1_default_map(bool paper_literal = false);

/// Looks up the trimmed token. Throws Error(unknown_income_code) when it is unmapped and the map
/// has no default.
double income_from_letter(std::string_view token, const IncomeRangeMap &map);

/// Element-wise income_from_letter; the first failure carries its 1-based position as line.
std::vector<double> recode_stream(std::span<const std::string> tokens, const IncomeRangeMap &map);

} // namespace hdbprep
