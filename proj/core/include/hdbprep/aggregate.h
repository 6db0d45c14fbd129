#pragma once

#include "hdbprep/model.h"

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hdbprep {

/// One person as seen by the household reducers. Age and gender stay raw so that each reducer
/// parses only what it needs and reports failures at the source line.
struct Member {
    std::size_t line{};
    std::string area;
    std::string age_raw;
    std::string gender_raw;
    bool is_chief{};
    std::optional<double> income;
};

struct KeyedMember {
    HouseholdKey key;
    Member member;
};

struct HouseholdRun {
    HouseholdKey key;
    std::vector<Member> members;
};

struct Warning {
    std::string code;
    std::string key;
    std::size_t line{};
    std::string message;
};

using Diagnostics = std::vector<Warning>;

/// How raw member tokens are interpreted.
struct MemberRules {
    AgeEncoding age_encoding{AgeEncoding::years};
    GenderEncoding gender_encoding{GenderEncoding::male0_female1};
    MissingAgePolicy missing_age{MissingAgePolicy::paper_compat};
    /// Write 0.99 for a weight whose inputs do not parse instead of failing.
    bool paper_sentinel{false};
};

/// Parsed age, or nullopt when the token is bad and sentinel mode is on.
std::optional<Age> member_age(const Member &member, const MemberRules &rules);

/// Members whose age cannot be parsed in sentinel mode count as children.
bool member_is_adult(const Member &member, const MemberRules &rules);

/// Oxford or FAO-OMS weight of one member; 0.99 in sentinel mode when an input does not parse.
double member_weight(const Member &member, const MemberRules &rules, ScaleKind kind);

// Reducers fold the members of one household run: init(first), step(state, next)...,
// finish(state, key, diagnostics).
template <typename R>
concept Reducer = requires(const R &reducer, typename R::state_type &state, const Member &member,
                           const HouseholdKey &key, Diagnostics &diagnostics) {
    typename R::result_type;
    { reducer.init(member) } -> std::same_as<typename R::state_type>;
    reducer.step(state, member);
    { reducer.finish(state, key, diagnostics) } -> std::convertible_to<typename R::result_type>;
};

struct SizeReducer {
    using state_type = std::size_t;
    using result_type = std::size_t;
    state_type init(const Member &) const { return 1; }
    void step(state_type &size, const Member &) const { ++size; }
    result_type finish(const state_type &size, const HouseholdKey &, Diagnostics &) const {
        return size;
    }
};

struct ScaleSumReducer {
    using state_type = double;
    using result_type = double;
    ScaleKind kind{ScaleKind::oxford};
    MemberRules rules;

    state_type init(const Member &m) const { return member_weight(m, rules, kind); }
    void step(state_type &sum, const Member &m) const { sum += member_weight(m, rules, kind); }
    result_type finish(const state_type &sum, const HouseholdKey &, Diagnostics &) const {
        return sum;
    }
};

struct AdultCounts {
    std::size_t adults{};
    std::size_t children{};
    bool operator==(const AdultCounts &) const = default;
};

struct AdultCountReducer {
    using state_type = AdultCounts;
    using result_type = AdultCounts;
    MemberRules rules;

    state_type init(const Member &m) const {
        auto counts = AdultCounts{};
        step(counts, m);
        return counts;
    }
    void step(state_type &counts, const Member &m) const {
        ++(member_is_adult(m, rules) ? counts.adults : counts.children);
    }
    result_type finish(const state_type &counts, const HouseholdKey &, Diagnostics &) const {
        return counts;
    }
};

struct DmpReducer {
    using state_type = AdultCounts;
    using result_type = double;
    double c{0.5};
    double s{0.7};
    MemberRules rules;

    state_type init(const Member &m) const { return AdultCountReducer{rules}.init(m); }
    void step(state_type &counts, const Member &m) const { AdultCountReducer{rules}.step(counts, m); }
    result_type finish(const state_type &counts, const HouseholdKey &, Diagnostics &) const;
};

/// Throws Error(missing_income) when a member carries no income.
struct TotalIncomeReducer {
    using state_type = double;
    using result_type = double;
    state_type init(const Member &m) const;
    void step(state_type &total, const Member &m) const { total += init(m); }
    result_type finish(const state_type &total, const HouseholdKey &, Diagnostics &) const {
        return total;
    }
};

/// Area of the first member. Disagreeing members raise an AREA_MISMATCH warning.
struct FirstLabelReducer {
    struct state_type {
        std::string label;
        std::size_t first_mismatch_line{};
    };
    using result_type = std::string;
    state_type init(const Member &m) const { return {m.area, 0}; }
    void step(state_type &state, const Member &m) const {
        if (m.area != state.label && state.first_mismatch_line == 0) {
            state.first_mismatch_line = m.line;
        }
    }
    result_type finish(const state_type &state, const HouseholdKey &key,
                       Diagnostics &diagnostics) const;
};

/// Gender token of the member marked as chief; the last chief wins, "XXX" when there is none.
struct ChiefLabelReducer {
    struct state_type {
        std::string label{no_chief_label};
        std::size_t chiefs{};
        std::size_t first_line{};
    };
    using result_type = std::string;
    state_type init(const Member &m) const {
        auto state = state_type{};
        state.first_line = m.line;
        step(state, m);
        return state;
    }
    void step(state_type &state, const Member &m) const {
        if (m.is_chief) {
            state.label = m.gender_raw;
            ++state.chiefs;
        }
    }
    result_type finish(const state_type &state, const HouseholdKey &key,
                       Diagnostics &diagnostics) const;
};

/// Collects per-member data-quality warnings: strict-mode missing ages and sentinel weights.
struct MemberQualityReducer {
    using state_type = Diagnostics;
    using result_type = std::size_t;
    MemberRules rules;
    bool check_gender{true};

    state_type init(const Member &m) const {
        auto found = Diagnostics{};
        step(found, m);
        return found;
    }
    void step(state_type &found, const Member &m) const;
    result_type finish(const state_type &found, const HouseholdKey &key,
                       Diagnostics &diagnostics) const;
};

/// Runs several reducers side by side over one pass; the result is a tuple of their results.
template <Reducer... Rs> class FusedReducer {
  public:
    using state_type = std::tuple<typename Rs::state_type...>;
    using result_type = std::tuple<typename Rs::result_type...>;

    explicit FusedReducer(Rs... reducers) : reducers_{std::move(reducers)...} {}

    state_type init(const Member &m) const {
        return std::apply([&](const auto &...r) { return state_type{r.init(m)...}; }, reducers_);
    }
    void step(state_type &state, const Member &m) const {
        step_impl(state, m, std::index_sequence_for<Rs...>{});
    }
    result_type finish(const state_type &state, const HouseholdKey &key,
                       Diagnostics &diagnostics) const {
        return finish_impl(state, key, diagnostics, std::index_sequence_for<Rs...>{});
    }

  private:
    template <std::size_t... I>
    void step_impl(state_type &state, const Member &m, std::index_sequence<I...>) const {
        (std::get<I>(reducers_).step(std::get<I>(state), m), ...);
    }
    template <std::size_t... I>
    result_type finish_impl(const state_type &state, const HouseholdKey &key,
                            Diagnostics &diagnostics, std::index_sequence<I...>) const {
        return result_type{std::get<I>(reducers_).finish(std::get<I>(state), key, diagnostics)...};
    }

    std::tuple<Rs...> reducers_;
};

/// Detects the start of each consecutive run and rejects a key that comes back after a
/// different key intervened.
class ConsecutiveKeyGuard {
  public:
    /// True when `key` opens a new run. Throws Error(non_consecutive_key) at `line`.
    bool advance(const HouseholdKey &key, std::size_t line);
    std::size_t runs() const noexcept { return closed_.size() + (current_ ? 1 : 0); }

  private:
    std::optional<HouseholdKey> current_;
    std::unordered_set<HouseholdKey> closed_;
};

/// Splits rows into maximal runs of equal keys, in input order.
std::vector<HouseholdRun> group_consecutive(std::span<const KeyedMember> rows);

/// Folds one materialised run.
template <Reducer R>
typename R::result_type fold_run(const HouseholdRun &run, const R &reducer,
                                 Diagnostics &diagnostics) {
    auto state = reducer.init(run.members.front());
    for (std::size_t i = 1; i < run.members.size(); ++i) {
        reducer.step(state, run.members[i]);
    }
    return reducer.finish(state, run.key, diagnostics);
}

/// Streams rows once, calling sink(key, result) at the end of every run. Returns the run count.
template <Reducer R, typename Sink>
std::size_t stream_reduce(std::span<const KeyedMember> rows, const R &reducer,
                          Diagnostics &diagnostics, Sink &&sink) {
    auto guard = ConsecutiveKeyGuard{};
    auto state = std::optional<typename R::state_type>{};
    const HouseholdKey *current = nullptr;
    for (const auto &row : rows) {
        if (guard.advance(row.key, row.member.line)) {
            if (state) {
                sink(*current, reducer.finish(*state, *current, diagnostics));
            }
            state = reducer.init(row.member);
            current = &row.key;
        } else {
            reducer.step(*state, row.member);
        }
    }
    if (state) {
        sink(*current, reducer.finish(*state, *current, diagnostics));
    }
    return guard.runs();
}

std::size_t reduce_size(const HouseholdRun &run);
double reduce_scale_sum(const HouseholdRun &run, ScaleKind kind, const MemberRules &rules);
AdultCounts reduce_adult_counts(const HouseholdRun &run, const MemberRules &rules);
double reduce_dmp(const HouseholdRun &run, double c, double s, const MemberRules &rules);
double reduce_total_income(const HouseholdRun &run);
std::string reduce_first_label(const HouseholdRun &run, Diagnostics *diagnostics = nullptr);
std::string reduce_chief_label(const HouseholdRun &run, Diagnostics *diagnostics = nullptr);

struct AggregateConfig {
    MemberRules rules;
    double dmp_c{0.5};
    double dmp_s{0.7};
    bool income_enabled{false};
};

/// One aggregate per household run, every reducer applied in a single pass over `rows`.
/// scaled_income is left empty; it depends on the chosen scale and is set by the pipeline.
std::vector<HouseholdAggregate> aggregate_all(std::span<const KeyedMember> rows,
                                              const AggregateConfig &config,
                                              Diagnostics *diagnostics = nullptr);

} // namespace hdbprep
