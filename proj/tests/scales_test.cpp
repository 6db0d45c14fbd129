#include "hdbprep/error.h"
#include "hdbprep/scales.h"

#include "support.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hdbprep;

namespace {

// Same power evaluated in long double through exp/log, as an independent reference.
double reference_pow(double base, double exponent) {
    return static_cast<double>(std::exp(static_cast<long double>(exponent) *
                                        std::log(static_cast<long double>(base))));
}

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::io_error;
}

} // namespace

TEST(Scales, ThresholdsInYears) {
    EXPECT_FALSE(classify_adult(Age{14.0}, AgeEncoding::years));
    EXPECT_FALSE(classify_adult(Age{14.99}, AgeEncoding::years));
    EXPECT_TRUE(classify_adult(Age{15.0}, AgeEncoding::years));
    EXPECT_TRUE(classify_adult(Age{16.0}, AgeEncoding::years));
}

TEST(Scales, ThresholdsInClasses) {
    EXPECT_FALSE(classify_adult(Age{3.0}, AgeEncoding::five_year_classes));
    EXPECT_TRUE(classify_adult(Age{4.0}, AgeEncoding::five_year_classes));
    EXPECT_TRUE(classify_adult(Age{5.0}, AgeEncoding::five_year_classes));
}

TEST(Scales, InvalidEncodingIsRejected) {
    EXPECT_EQ(code_of([] { classify_adult(Age{20}, static_cast<AgeEncoding>(7)); }),
              ErrorCode::bad_encoding);
}

TEST(Scales, OxfordWeights) {
    EXPECT_EQ(oxford_weight(Age{40}, AgeEncoding::years, true).value(), 1.0);
    EXPECT_EQ(oxford_weight(Age{40}, AgeEncoding::years, false).value(), 0.7);
    EXPECT_EQ(oxford_weight(Age{10}, AgeEncoding::years, true).value(), 0.5);
    EXPECT_EQ(oxford_weight(Age{10}, AgeEncoding::years, false).value(), 0.5);
}

TEST(Scales, FaoFamChecksChildBeforeGender) {
    EXPECT_EQ(faofam_weight(Age{30}, AgeEncoding::years, Gender::male).value(), 1.0);
    EXPECT_EQ(faofam_weight(Age{30}, AgeEncoding::years, Gender::female).value(), 0.8);
    EXPECT_EQ(faofam_weight(Age{2}, AgeEncoding::five_year_classes, Gender::male).value(), 0.5);
    EXPECT_EQ(faofam_weight(Age{2}, AgeEncoding::five_year_classes, Gender::female).value(), 0.5);
}

TEST(Scales, DmpMatchesReference) {
    EXPECT_LE(support::relative_error(dmp_scale(2, 3, 0.5, 0.7), reference_pow(3.5, 0.7)), 1e-12);
    EXPECT_LE(support::relative_error(dmp_scale(0, 1, 0.5, 0.7), reference_pow(0.5, 0.7)), 1e-12);
    // 40-digit decimal evaluations
    EXPECT_LE(support::relative_error(dmp_scale(2, 3, 0.5, 0.7), 2.4035193953495485114525629963),
              1e-9);
    EXPECT_LE(support::relative_error(dmp_scale(0, 1, 0.5, 0.7), 0.6155722066724581422496965346),
              1e-9);
}

TEST(Scales, DmpDegenerateParameters) {
    for (std::size_t na = 1; na <= 100; ++na) {
        EXPECT_EQ(dmp_scale(na, 0, 0.3, 1.0), static_cast<double>(na));
    }
    EXPECT_EQ(dmp_scale(3, 4, 0.5, 0.0), 1.0);
    EXPECT_EQ(dmp_scale(3, 4, 1.0, 1.0), 7.0);
    EXPECT_EQ(dmp_scale(3, 4, 0.0, 1.0), 3.0);
}

TEST(Scales, DmpErrors) {
    EXPECT_EQ(code_of([] { dmp_scale(0, 0, 0.5, 0.7); }), ErrorCode::empty_household);
    EXPECT_EQ(code_of([] { dmp_scale(1, 1, 1.5, 0.7); }), ErrorCode::dmp_param_out_of_range);
    EXPECT_EQ(code_of([] { dmp_scale(1, 1, 0.5, -0.1); }), ErrorCode::dmp_param_out_of_range);
    EXPECT_EQ(code_of([] { dmp_scale(1, 1, std::nan(""), 0.5); }),
              ErrorCode::dmp_param_out_of_range);
}

TEST(Scales, DmpMonotoneInMembers) {
    std::mt19937 rng{11};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::uniform_int_distribution<std::size_t> count{0, 20};
    for (int i = 0; i < 500; ++i) {
        const auto c = unit(rng);
        const auto s = unit(rng);
        const auto na = count(rng);
        const auto nc = count(rng);
        if (na + nc == 0) {
            continue;
        }
        const auto base = dmp_scale(na, nc, c, s);
        EXPECT_LE(base, dmp_scale(na + 1, nc, c, s));
        EXPECT_LE(base, dmp_scale(na, nc + 1, c, s));
        EXPECT_LE(support::relative_error(base, reference_pow(na + c * nc, s)), 1e-12);
    }
}

TEST(Scales, EquivalentIncome) {
    const std::vector<Weight> weights{Weight::full(), Weight::other_adult(), Weight::child()};
    const std::vector<double> incomes{100.0, 200.0, 10.0};
    EXPECT_DOUBLE_EQ(household_equivalent_income(weights, incomes), 100.0 + 140.0 + 5.0);
    const std::vector<double> short_incomes{1.0};
    EXPECT_EQ(code_of([&] { household_equivalent_income(weights, short_incomes); }),
              ErrorCode::length_mismatch);
    EXPECT_EQ(code_of([] { household_equivalent_income({}, {}); }), ErrorCode::length_mismatch);
}
