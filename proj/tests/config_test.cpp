#include "hdbprep/config.h"
#include "hdbprep/error.h"

#include <gtest/gtest.h>

using namespace hdbprep;

namespace {

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

TEST(Config, DefaultsWithEmptyFile) {
    const auto config = parse_config("", "/data");
    EXPECT_EQ(config.input_format, InputFormat::columns);
    EXPECT_EQ(config.column_files.at(Variable::age), std::filesystem::path{"/data/age.txt"});
    EXPECT_FALSE(config.column_files.contains(Variable::income));
    EXPECT_EQ(config.income_mode, IncomeMode::none);
    EXPECT_EQ(config.dmp_c, 0.5);
    EXPECT_EQ(config.dmp_s, 0.7);
    EXPECT_EQ(config.scaled_with, ScaleKind::oxford);
    EXPECT_EQ(config.skip_header, 0U);
    EXPECT_NO_THROW(validate_config(config));
}

TEST(Config, FullFile) {
    const auto text = R"(; survey of 2001
[input]
dir = raw
age = ages.txt
skip_header = 1
# letter codes
[income]
mode = letters
[identity]
prefixes = D/M/C/H
[encoding]
age = classes
gender = 1/2
missing_age = strict
[scales]
output = oxford, dmp
dmp_c = 0.3
dmp_s = 1
scaled = dmp
[run]
out_dir = /tmp/result
sort = yes
paper_literal = true
)";
    const auto config = parse_config(text, "/survey");
    EXPECT_EQ(config.column_files.at(Variable::age), std::filesystem::path{"/survey/raw/ages.txt"});
    EXPECT_EQ(config.column_files.at(Variable::income),
              std::filesystem::path{"/survey/raw/monthlyincomeNT.txt"});
    EXPECT_EQ(config.skip_header, 1U);
    EXPECT_EQ(config.scheme, PrefixScheme::dmch());
    EXPECT_EQ(config.age_encoding, AgeEncoding::five_year_classes);
    EXPECT_EQ(config.gender_encoding, GenderEncoding::male1_female2);
    EXPECT_EQ(config.missing_age, MissingAgePolicy::strict);
    EXPECT_EQ(config.scales, (std::vector<ScaleKind>{ScaleKind::oxford, ScaleKind::dmp}));
    EXPECT_EQ(config.dmp_c, 0.3);
    EXPECT_EQ(config.dmp_s, 1.0);
    EXPECT_EQ(config.scaled_with, ScaleKind::dmp);
    EXPECT_EQ(config.out_dir, std::filesystem::path{"/tmp/result"});
    EXPECT_TRUE(config.sort);
    EXPECT_TRUE(config.paper_literal);
    EXPECT_NO_THROW(validate_config(config));
    EXPECT_EQ(effective_income_map(config).find("F"), 115000.0);
    EXPECT_EQ(effective_income_map(config).default_amount(), 0.0);
}

TEST(Config, TableLayout) {
    const auto text = R"([input]
format = table
table = persons.tsv
delimiter = tab
[columns]
age = AGE_Y
income = REV
[income]
mode = numeric
)";
    const auto config = parse_config(text, "/d");
    EXPECT_EQ(config.input_format, InputFormat::table);
    EXPECT_EQ(config.table.path, std::filesystem::path{"/d/persons.tsv"});
    EXPECT_EQ(config.table.delimiter, '\t');
    EXPECT_EQ(config.table.column_map.at(Variable::age), "AGE_Y");
    EXPECT_NO_THROW(validate_config(config));
}

TEST(Config, CustomIncomeMap) {
    const auto config = parse_config("[income]\nmode = letters\ndefault = 7\n[income_map]\n"
                                     "X = 10\nY = 20\n",
                                     "/d");
    const auto map = effective_income_map(config);
    EXPECT_EQ(map.find("Y"), 20.0);
    EXPECT_FALSE(map.find("A"));
    EXPECT_EQ(map.default_amount(), 7.0);
}

TEST(Config, Rejections) {
    EXPECT_EQ(code_of([] { parse_config("[inputs]\nformat = columns\n", "/"); }),
              ErrorCode::config_error);
    EXPECT_EQ(code_of([] { parse_config("[input]\nfromat = columns\n", "/"); }),
              ErrorCode::config_error);
    EXPECT_EQ(code_of([] { parse_config("[scales]\ndmp_c = half\n", "/"); }),
              ErrorCode::config_error);
    EXPECT_EQ(code_of([] { parse_config("[run]\nsort = maybe\n", "/"); }), ErrorCode::config_error);
    EXPECT_EQ(code_of([] { parse_config("[encoding]\nage = 3\n", "/"); }), ErrorCode::bad_encoding);
    EXPECT_EQ(code_of([] { parse_config("[input]\nskip_header = -1\n", "/"); }),
              ErrorCode::config_error);
    EXPECT_EQ(code_of([] { load_config("/nonexistent/hdbprep.ini"); }), ErrorCode::io_error);
}

TEST(Config, CrossFieldValidation) {
    auto config = parse_config("[scales]\ndmp_c = 1.2\n", "/");
    EXPECT_EQ(code_of([&] { validate_config(config); }), ErrorCode::dmp_param_out_of_range);
    config = parse_config("[input]\nformat = table\n", "/");
    EXPECT_EQ(code_of([&] { validate_config(config); }), ErrorCode::config_error);
    config = parse_config("[income]\nmode = letters\n[scales]\noutput = dmp\n", "/");
    EXPECT_EQ(code_of([&] { validate_config(config); }), ErrorCode::config_error);
    config = parse_config("[input]\nincome_extra = a.txt\n", "/");
    EXPECT_EQ(code_of([&] { validate_config(config); }), ErrorCode::config_error);
}
