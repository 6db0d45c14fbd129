#include "hdbprep/scales.h"

#include "hdbprep/error.h"

#include <cmath>

namespace hdbprep {

bool classify_adult(const Age &age, AgeEncoding encoding) {
    switch (encoding) {
    case AgeEncoding::years: return !(age.value < adult_age_years);
    case AgeEncoding::five_year_classes: return !(age.value < adult_age_class);
    }
    throw Error{ErrorCode::bad_encoding,
                "invalid age encoding " + std::to_string(static_cast<int>(encoding))};
}

Weight oxford_weight(const Age &age, AgeEncoding encoding, bool is_chief) {
    if (!classify_adult(age, encoding)) {
        return Weight::child();
    }
    return is_chief ? Weight::full() : Weight::other_adult();
}

Weight faofam_weight(const Age &age, AgeEncoding encoding, Gender gender) {
    if (!classify_adult(age, encoding)) {
        return Weight::child();
    }
    switch (gender) {
    case Gender::male: return Weight::full();
    case Gender::female: return Weight::female_adult();
    }
    throw Error{ErrorCode::bad_encoding, "invalid gender value"};
}

double dmp_scale(std::size_t n_adults, std::size_t n_children, double c, double s) {
    validate_weight_domain(ScaleSpec{ScaleKind::dmp, c, s});
    if (n_adults + n_children == 0) {
        throw Error{ErrorCode::empty_household, "DMP scale of a household with no members"};
    }
    return std::pow(static_cast<double>(n_adults) + c * static_cast<double>(n_children), s);
}

double household_equivalent_income(std::span<const Weight> weights,
                                   std::span<const double> incomes) {
    if (weights.size() != incomes.size() || weights.empty()) {
        throw Error{ErrorCode::length_mismatch,
                    "weights and incomes must be non-empty and of equal length (" +
                        std::to_string(weights.size()) + " vs " + std::to_string(incomes.size()) +
                        ")"};
    }
    auto total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i].value() * incomes[i];
    }
    return total;
}

} // namespace hdbprep
