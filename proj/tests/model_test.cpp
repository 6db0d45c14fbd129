#include "hdbprep/error.h"
#include "hdbprep/model.h"

#include <gtest/gtest.h>

using namespace hdbprep;

namespace {

Strata strata() { return Strata{"1", "2", "3", "4"}; }

} // namespace

TEST(PersonRecord, KeepsTokens) {
    const PersonRecord p{strata(), "34", "0", "1", std::string{"B"}};
    EXPECT_EQ(p.age_raw(), "34");
    EXPECT_EQ(p.income_raw(), "B");
    EXPECT_TRUE(p.is_chief());
    EXPECT_EQ(p.area(), "1");
}

TEST(PersonRecord, AreaColumnOverridesRegion) {
    const PersonRecord p{strata(), "34", "0", "2", std::nullopt, std::string{"Bamako"}};
    EXPECT_EQ(p.area(), "Bamako");
    EXPECT_FALSE(p.is_chief());
}

TEST(PersonRecord, OnlyOneMarksChief) {
    EXPECT_FALSE((PersonRecord{strata(), "34", "0", "01"}.is_chief()));
    EXPECT_FALSE((PersonRecord{strata(), "34", "0", "2"}.is_chief()));
}

TEST(PersonRecord, RejectsEmptyTokens) {
    try {
        PersonRecord{Strata{"1", " ", "3", "4"}, "34", "0", "1"};
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::empty_token);
    }
    EXPECT_THROW((PersonRecord{strata(), "", "0", "1"}), Error);
    EXPECT_THROW((PersonRecord{strata(), "3", "0", "1", std::string{""}}), Error);
}

TEST(PersonRecord, RejectsLineBreakInStrata) {
    EXPECT_THROW((PersonRecord{Strata{"1\n2", "1", "1", "1"}, "3", "0", "1"}), Error);
}

TEST(Encodings, FromCode) {
    EXPECT_EQ(age_encoding_from_code(1), AgeEncoding::years);
    EXPECT_EQ(age_encoding_from_code(2), AgeEncoding::five_year_classes);
    EXPECT_EQ(gender_encoding_from_code(2), GenderEncoding::male1_female2);
    try {
        age_encoding_from_code(3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::bad_encoding);
    }
    EXPECT_THROW(gender_encoding_from_code(0), Error);
}

TEST(Encodings, ScaleNames) {
    for (auto kind : {ScaleKind::oxford, ScaleKind::faofam, ScaleKind::dmp}) {
        EXPECT_EQ(scale_kind_from_string(to_string(kind)), kind);
    }
    EXPECT_THROW(scale_kind_from_string("oecd"), Error);
}

TEST(WeightDomain, Bounds) {
    EXPECT_NO_THROW(validate_weight_domain(ScaleSpec{ScaleKind::dmp, 0.0, 1.0}));
    EXPECT_THROW(validate_weight_domain(ScaleSpec{ScaleKind::dmp, 1.01, 0.5}), Error);
    EXPECT_THROW(validate_weight_domain(ScaleSpec{ScaleKind::dmp, 0.5, -0.01}), Error);
}

TEST(ErrorText, CarriesStageAndLine) {
    const auto e = Error{ErrorCode::bad_age_token, "age 'x'", 12}.with_stage("ingest");
    EXPECT_EQ(std::string{e.what()}, "[ingest] BAD_AGE_TOKEN at line 12: age 'x'");
    EXPECT_TRUE(is_data_error(ErrorCode::bad_age_token));
    EXPECT_FALSE(is_data_error(ErrorCode::io_error));
    EXPECT_FALSE(is_data_error(ErrorCode::config_error));
}
