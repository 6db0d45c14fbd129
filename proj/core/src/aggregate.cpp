#include "hdbprep/aggregate.h"

#include "hdbprep/error.h"
#include "hdbprep/ingest.h"
#include "hdbprep/scales.h"

namespace hdbprep {

std::optional<Age> member_age(const Member &member, const MemberRules &rules) {
    try {
        return parse_age(member.age_raw, rules.age_encoding, rules.missing_age);
    } catch (const Error &e) {
        if (rules.paper_sentinel && e.code() == ErrorCode::bad_age_token) {
            return std::nullopt;
        }
        throw e.with_line(member.line);
    }
}

bool member_is_adult(const Member &member, const MemberRules &rules) {
    const auto age = member_age(member, rules);
    return age && classify_adult(*age, rules.age_encoding);
}

double member_weight(const Member &member, const MemberRules &rules, ScaleKind kind) {
    const auto age = member_age(member, rules);
    if (!age) {
        return paper_error_sentinel;
    }
    switch (kind) {
    case ScaleKind::oxford:
        return oxford_weight(*age, rules.age_encoding, member.is_chief).value();
    case ScaleKind::faofam: {
        // children are weighted before the gender token is looked at
        if (!classify_adult(*age, rules.age_encoding)) {
            return Weight::child().value();
        }
        try {
            const auto gender = parse_gender(member.gender_raw, rules.gender_encoding);
            return faofam_weight(*age, rules.age_encoding, gender).value();
        } catch (const Error &e) {
            if (rules.paper_sentinel && e.code() == ErrorCode::bad_gender_token) {
                return paper_error_sentinel;
            }
            throw e.with_line(member.line);
        }
    }
    case ScaleKind::dmp:
        break;
    }
    throw Error{ErrorCode::config_error, "the DMP scale has no per-person weight", member.line};
}

DmpReducer::result_type DmpReducer::finish(const state_type &counts, const HouseholdKey &,
                                           Diagnostics &) const {
    return dmp_scale(counts.adults, counts.children, c, s);
}

TotalIncomeReducer::state_type TotalIncomeReducer::init(const Member &m) const {
    if (!m.income) {
        throw Error{ErrorCode::missing_income, "member has no income value", m.line};
    }
    return *m.income;
}

FirstLabelReducer::result_type FirstLabelReducer::finish(const state_type &state,
                                                         const HouseholdKey &key,
                                                         Diagnostics &diagnostics) const {
    if (state.first_mismatch_line != 0) {
        diagnostics.push_back({"AREA_MISMATCH", key.canonical(), state.first_mismatch_line,
                               "area differs within household; keeping first value '" +
                                   state.label + "'"});
    }
    return state.label;
}

ChiefLabelReducer::result_type ChiefLabelReducer::finish(const state_type &state,
                                                         const HouseholdKey &key,
                                                         Diagnostics &diagnostics) const {
    if (state.chiefs == 0) {
        diagnostics.push_back({"NO_CHIEF", key.canonical(), state.first_line,
                               "household has no chief; label set to XXX"});
    } else if (state.chiefs > 1) {
        diagnostics.push_back({"MULTIPLE_CHIEFS", key.canonical(), state.first_line,
                               std::to_string(state.chiefs) +
                                   " chiefs in household; keeping the last one's gender '" +
                                   state.label + "'"});
    }
    return state.label;
}

void MemberQualityReducer::step(state_type &found, const Member &m) const {
    const auto age = member_age(m, rules);
    if (!age) {
        found.push_back({"SENTINEL_WEIGHT", {}, m.line,
                         "bad age token '" + m.age_raw + "'; weights set to 0.99"});
        return;
    }
    if (age->missing) {
        found.push_back({"MISSING_AGE", {}, m.line,
                         "age code 99 marks an unknown age; member weighted as an adult"});
    }
    if (check_gender && rules.paper_sentinel && classify_adult(*age, rules.age_encoding)) {
        try {
            (void)parse_gender(m.gender_raw, rules.gender_encoding);
        } catch (const Error &e) {
            if (e.code() != ErrorCode::bad_gender_token) {
                throw;
            }
            found.push_back({"SENTINEL_WEIGHT", {}, m.line,
                             "bad gender token '" + m.gender_raw + "'; FAO-OMS weight set to 0.99"});
        }
    }
}

MemberQualityReducer::result_type MemberQualityReducer::finish(const state_type &found,
                                                               const HouseholdKey &key,
                                                               Diagnostics &diagnostics) const {
    for (auto warning : found) {
        warning.key = key.canonical();
        diagnostics.push_back(std::move(warning));
    }
    return found.size();
}

bool ConsecutiveKeyGuard::advance(const HouseholdKey &key, std::size_t line) {
    if (current_ && *current_ == key) {
        return false;
    }
    if (closed_.contains(key)) {
        throw Error{ErrorCode::non_consecutive_key,
                    "household key " + key.canonical() +
                        " reappears after a different household; input is not grouped by "
                        "household (use --sort to sort it)",
                    line};
    }
    if (current_) {
        closed_.insert(std::move(*current_));
    }
    current_ = key;
    return true;
}

std::vector<HouseholdRun> group_consecutive(std::span<const KeyedMember> rows) {
    auto guard = ConsecutiveKeyGuard{};
    auto runs = std::vector<HouseholdRun>{};
    for (const auto &row : rows) {
        if (guard.advance(row.key, row.member.line)) {
            runs.push_back(HouseholdRun{row.key, {}});
        }
        runs.back().members.push_back(row.member);
    }
    return runs;
}

std::size_t reduce_size(const HouseholdRun &run) {
    auto ignored = Diagnostics{};
    return fold_run(run, SizeReducer{}, ignored);
}

double reduce_scale_sum(const HouseholdRun &run, ScaleKind kind, const MemberRules &rules) {
    auto ignored = Diagnostics{};
    return fold_run(run, ScaleSumReducer{kind, rules}, ignored);
}

AdultCounts reduce_adult_counts(const HouseholdRun &run, const MemberRules &rules) {
    auto ignored = Diagnostics{};
    return fold_run(run, AdultCountReducer{rules}, ignored);
}

double reduce_dmp(const HouseholdRun &run, double c, double s, const MemberRules &rules) {
    auto ignored = Diagnostics{};
    return fold_run(run, DmpReducer{c, s, rules}, ignored);
}

double reduce_total_income(const HouseholdRun &run) {
    auto ignored = Diagnostics{};
    return fold_run(run, TotalIncomeReducer{}, ignored);
}

std::string reduce_first_label(const HouseholdRun &run, Diagnostics *diagnostics) {
    auto local = Diagnostics{};
    return fold_run(run, FirstLabelReducer{}, diagnostics ? *diagnostics : local);
}

std::string reduce_chief_label(const HouseholdRun &run, Diagnostics *diagnostics) {
    auto local = Diagnostics{};
    return fold_run(run, ChiefLabelReducer{}, diagnostics ? *diagnostics : local);
}

std::vector<HouseholdAggregate> aggregate_all(std::span<const KeyedMember> rows,
                                              const AggregateConfig &config,
                                              Diagnostics *diagnostics) {
    validate_weight_domain(ScaleSpec{ScaleKind::dmp, config.dmp_c, config.dmp_s});
    const auto &rules = config.rules;
    const auto fused = FusedReducer{MemberQualityReducer{rules},
                                    SizeReducer{},
                                    AdultCountReducer{rules},
                                    ScaleSumReducer{ScaleKind::oxford, rules},
                                    ScaleSumReducer{ScaleKind::faofam, rules},
                                    DmpReducer{config.dmp_c, config.dmp_s, rules},
                                    FirstLabelReducer{},
                                    ChiefLabelReducer{}};
    auto local = Diagnostics{};
    auto &sink = diagnostics ? *diagnostics : local;
    auto aggregates = std::vector<HouseholdAggregate>{};

    const auto emit = [&](const HouseholdKey &key, const auto &result) {
        const auto &[warnings, size, counts, oxford, faofam, dmp, area, chief] = result;
        (void)warnings;
        auto &out = aggregates.emplace_back();
        out.key = key;
        out.size = size;
        out.n_adults = counts.adults;
        out.n_children = counts.children;
        out.scale_oxford = oxford;
        out.scale_faofam = faofam;
        out.scale_dmp = dmp;
        out.label_area = area;
        out.label_chief_gender = chief;
    };

    if (config.income_enabled) {
        const auto with_income = FusedReducer{fused, TotalIncomeReducer{}};
        stream_reduce(rows, with_income, sink, [&](const HouseholdKey &key, const auto &result) {
            emit(key, std::get<0>(result));
            aggregates.back().total_income = std::get<1>(result);
        });
    } else {
        stream_reduce(rows, fused, sink, emit);
    }
    return aggregates;
}

} // namespace hdbprep
