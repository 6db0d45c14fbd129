#include "hdbprep/aggregate.h"
#include "hdbprep/error.h"

#include "support.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hdbprep;
using hdbprep::support::key_of;
using hdbprep::support::member;

namespace {

std::vector<KeyedMember> rows_of(const std::vector<std::pair<std::string, Member>> &spec) {
    auto rows = std::vector<KeyedMember>{};
    for (const auto &[household, m] : spec) {
        rows.push_back(KeyedMember{key_of(household), m});
    }
    return rows;
}

// Random grouped rows, households 1..n in order, sizes 1..9.
std::vector<KeyedMember> random_rows(std::mt19937 &rng, std::size_t households) {
    std::uniform_int_distribution<int> size{1, 9};
    std::uniform_int_distribution<int> age{0, 90};
    std::uniform_int_distribution<int> coin{0, 1};
    std::uniform_int_distribution<int> amount{0, 1000};
    auto rows = std::vector<KeyedMember>{};
    for (std::size_t h = 1; h <= households; ++h) {
        const auto n = size(rng);
        const auto chief = std::uniform_int_distribution<int>{0, n - 1}(rng);
        for (int i = 0; i < n; ++i) {
            rows.push_back(KeyedMember{
                key_of(std::to_string(h)),
                member(rows.size() + 1, std::to_string(age(rng)), std::to_string(coin(rng)),
                       i == chief, std::to_string(h % 3), static_cast<double>(amount(rng)))});
        }
    }
    return rows;
}

} // namespace

TEST(Grouping, ConsecutiveRuns) {
    const auto rows = rows_of({{"1", member(1, "40", "0", true)},
                               {"1", member(2, "10", "1", false)},
                               {"2", member(3, "33", "1", true)}});
    const auto runs = group_consecutive(rows);
    ASSERT_EQ(runs.size(), 2U);
    EXPECT_EQ(runs[0].members.size(), 2U);
    EXPECT_EQ(runs[1].key, key_of("2"));
    EXPECT_TRUE(group_consecutive({}).empty());
}

TEST(Grouping, NonConsecutiveKeyNamesLine) {
    const auto rows = rows_of({{"1", member(1, "40", "0", true)},
                               {"2", member(2, "33", "1", true)},
                               {"1", member(3, "10", "1", false)}});
    try {
        group_consecutive(rows);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::non_consecutive_key);
        EXPECT_EQ(e.line(), 3U);
    }
    EXPECT_THROW(aggregate_all(rows, AggregateConfig{}), Error);
}

TEST(Reducers, HandComputedHousehold) {
    // chief male 40, wife 35, son 16, daughter 10, infant
    const auto rows = rows_of({{"1", member(1, "40", "0", true, "5", 100)},
                               {"1", member(2, "35", "1", false, "5", 50)},
                               {"1", member(3, "16", "0", false, "5", 0)},
                               {"1", member(4, "10", "1", false, "5", 0)},
                               {"1", member(5, "0.5", "0", false, "5", 0)}});
    auto diagnostics = Diagnostics{};
    const auto all = aggregate_all(rows, AggregateConfig{{}, 0.5, 0.7, true}, &diagnostics);
    ASSERT_EQ(all.size(), 1U);
    const auto &a = all.front();
    EXPECT_EQ(a.size, 5U);
    EXPECT_EQ(a.n_adults, 3U);
    EXPECT_EQ(a.n_children, 2U);
    EXPECT_NEAR(a.scale_oxford, 1.0 + 0.7 + 0.7 + 0.5 + 0.5, 1e-12);
    EXPECT_NEAR(a.scale_faofam, 1.0 + 0.8 + 1.0 + 0.5 + 0.5, 1e-12);
    EXPECT_NEAR(a.scale_dmp, std::exp(0.7 * std::log(4.0)), 1e-12);
    EXPECT_EQ(a.total_income, 150.0);
    EXPECT_EQ(a.label_area, "5");
    EXPECT_EQ(a.label_chief_gender, "0");
    EXPECT_FALSE(a.scaled_income);
    EXPECT_TRUE(diagnostics.empty());
}

TEST(Reducers, NoChiefAndTwoChiefs) {
    const auto rows = rows_of({{"1", member(1, "40", "0", false)},
                               {"1", member(2, "35", "1", false)},
                               {"2", member(3, "50", "0", true)},
                               {"2", member(4, "45", "1", true)}});
    auto diagnostics = Diagnostics{};
    const auto all = aggregate_all(rows, AggregateConfig{}, &diagnostics);
    ASSERT_EQ(all.size(), 2U);
    EXPECT_EQ(all[0].label_chief_gender, "XXX");
    EXPECT_EQ(all[1].label_chief_gender, "1");
    ASSERT_EQ(diagnostics.size(), 2U);
    EXPECT_EQ(diagnostics[0].code, "NO_CHIEF");
    EXPECT_EQ(diagnostics[1].code, "MULTIPLE_CHIEFS");
    EXPECT_EQ(diagnostics[1].key, key_of("2").canonical());
}

TEST(Reducers, AreaMismatchKeepsFirst) {
    const auto rows = rows_of({{"1", member(1, "40", "0", true, "north")},
                               {"1", member(2, "35", "1", false, "south")}});
    auto diagnostics = Diagnostics{};
    EXPECT_EQ(reduce_first_label(group_consecutive(rows).front(), &diagnostics), "north");
    ASSERT_EQ(diagnostics.size(), 1U);
    EXPECT_EQ(diagnostics[0].code, "AREA_MISMATCH");
    EXPECT_EQ(diagnostics[0].line, 2U);
}

TEST(Reducers, BadAgeFailsWithLine) {
    const auto rows = rows_of({{"1", member(7, "40", "0", true)}, {"1", member(8, "4O", "1", false)}});
    try {
        aggregate_all(rows, AggregateConfig{});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::bad_age_token);
        EXPECT_EQ(e.line(), 8U);
    }
}

TEST(Reducers, SentinelModeWritesLegacyValue) {
    const auto rows = rows_of({{"1", member(1, "40", "0", true)},
                               {"1", member(2, "??", "1", false)},
                               {"1", member(3, "30", "9", false)}});
    auto config = AggregateConfig{};
    config.rules.paper_sentinel = true;
    auto diagnostics = Diagnostics{};
    const auto a = aggregate_all(rows, config, &diagnostics).front();
    EXPECT_NEAR(a.scale_oxford, 1.0 + 0.99 + 0.7, 1e-12);
    EXPECT_NEAR(a.scale_faofam, 1.0 + 0.99 + 0.99, 1e-12);
    EXPECT_EQ(a.n_adults, 2U);
    EXPECT_EQ(a.n_children, 1U);
    EXPECT_EQ(diagnostics.size(), 2U);
    for (const auto &w : diagnostics) {
        EXPECT_EQ(w.code, "SENTINEL_WEIGHT");
    }
}

TEST(Reducers, StrictMissingAgeIsFlagged) {
    const auto rows = rows_of({{"1", member(1, "99", "0", true)}});
    auto config = AggregateConfig{};
    config.rules.missing_age = MissingAgePolicy::strict;
    auto diagnostics = Diagnostics{};
    const auto a = aggregate_all(rows, config, &diagnostics).front();
    EXPECT_EQ(a.n_adults, 1U);
    ASSERT_EQ(diagnostics.size(), 1U);
    EXPECT_EQ(diagnostics[0].code, "MISSING_AGE");
}

TEST(Reducers, MissingIncome) {
    const auto rows = rows_of({{"1", member(1, "40", "0", true, "1", 5.0)},
                               {"1", member(2, "30", "1", false, "1", std::nullopt)}});
    try {
        aggregate_all(rows, AggregateConfig{{}, 0.5, 0.7, true});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::missing_income);
        EXPECT_EQ(e.line(), 2U);
    }
}

TEST(Reducers, ClassesEncoding) {
    auto rules = MemberRules{};
    rules.age_encoding = AgeEncoding::five_year_classes;
    rules.gender_encoding = GenderEncoding::male1_female2;
    const auto rows = rows_of({{"1", member(1, "4", "2", true)}, {"1", member(2, "3", "1", false)}});
    const auto run = group_consecutive(rows).front();
    EXPECT_EQ(reduce_adult_counts(run, rules), (AdultCounts{1, 1}));
    EXPECT_NEAR(reduce_scale_sum(run, ScaleKind::faofam, rules), 1.3, 1e-12);
    EXPECT_NEAR(reduce_scale_sum(run, ScaleKind::oxford, rules), 1.5, 1e-12);
}

TEST(Properties, FusedEqualsSeparatePasses) {
    std::mt19937 rng{99};
    for (int round = 0; round < 30; ++round) {
        const auto rows = random_rows(rng, 1 + rng() % 60);
        const auto rules = MemberRules{};
        auto fused_diag = Diagnostics{};
        const auto fused = aggregate_all(rows, AggregateConfig{rules, 0.5, 0.7, true}, &fused_diag);
        const auto runs = group_consecutive(rows);
        ASSERT_EQ(fused.size(), runs.size());
        auto person_count = std::size_t{};
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto &a = fused[i];
            EXPECT_EQ(a.key, runs[i].key);
            EXPECT_EQ(a.size, reduce_size(runs[i]));
            EXPECT_EQ(a.scale_oxford, reduce_scale_sum(runs[i], ScaleKind::oxford, rules));
            EXPECT_EQ(a.scale_faofam, reduce_scale_sum(runs[i], ScaleKind::faofam, rules));
            EXPECT_EQ(a.scale_dmp, reduce_dmp(runs[i], 0.5, 0.7, rules));
            EXPECT_EQ(a.total_income, reduce_total_income(runs[i]));
            EXPECT_EQ(a.label_area, reduce_first_label(runs[i]));
            EXPECT_EQ(a.label_chief_gender, reduce_chief_label(runs[i]));
            person_count += a.size;
        }
        EXPECT_EQ(person_count, rows.size());
    }
}

TEST(Properties, BoundsAndConservation) {
    std::mt19937 rng{3};
    for (int round = 0; round < 30; ++round) {
        const auto rows = random_rows(rng, 1 + rng() % 80);
        const auto all = aggregate_all(rows, AggregateConfig{{}, 0.5, 0.7, true});
        auto total_size = std::size_t{};
        auto total_income = 0.0;
        for (const auto &a : all) {
            const auto n = static_cast<double>(a.size);
            EXPECT_GE(a.size, 1U);
            EXPECT_EQ(a.n_adults + a.n_children, a.size);
            EXPECT_GE(a.scale_oxford, 0.5 * n - 1e-9);
            EXPECT_LE(a.scale_oxford, 1.0 + 0.7 * (n - 1) + 1e-9);
            EXPECT_GE(a.scale_faofam, 0.5 * n - 1e-9);
            EXPECT_LE(a.scale_faofam, n + 1e-9);
            EXPECT_GT(a.scale_dmp, 0.0);
            EXPECT_LE(a.scale_dmp, n + 1e-9);
            total_size += a.size;
            total_income += *a.total_income;
        }
        auto expected_income = 0.0;
        for (const auto &row : rows) {
            expected_income += *row.member.income;
        }
        EXPECT_EQ(total_size, rows.size());
        EXPECT_EQ(total_income, expected_income);
    }
}

TEST(Properties, StreamReduceMatchesFoldRun) {
    std::mt19937 rng{8};
    const auto rows = random_rows(rng, 40);
    const auto reducer = FusedReducer{SizeReducer{}, AdultCountReducer{}, ChiefLabelReducer{}};
    auto diagnostics = Diagnostics{};
    auto streamed = std::vector<FusedReducer<SizeReducer, AdultCountReducer,
                                             ChiefLabelReducer>::result_type>{};
    const auto count = stream_reduce(std::span<const KeyedMember>{rows}, reducer, diagnostics,
                                     [&](const HouseholdKey &, auto result) {
                                         streamed.push_back(std::move(result));
                                     });
    const auto runs = group_consecutive(rows);
    ASSERT_EQ(count, runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        EXPECT_EQ(streamed[i], fold_run(runs[i], reducer, diagnostics));
    }
}
