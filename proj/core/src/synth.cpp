#include "hdbprep/synth.h"

#include "hdbprep/error.h"
#include "hdbprep/number_format.h"
#include "hdbprep/pipeline.h"

#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>

namespace hdbprep {

namespace {

struct IncomeCode {
    const char *code;
    double amount;
};

// Midpoints of the corrected ELIM1 ranges; kept here so ground truth does not depend on recode.
constexpr std::array<IncomeCode, 13> elim1_codes{{{"A", 14500.0},
                                                 {"B", 39500.0},
                                                 {"C", 75000.0},
                                                 {"D", 125000.0},
                                                 {"E", 175000.0},
                                                 {"F", 250000.0},
                                                 {"G", 400000.0},
                                                 {"H", 625000.0},
                                                 {"I", 875000.0},
                                                 {"U", 875000.0},
                                                 {"J", 1250000.0},
                                                 {"K", 2000000.0},
                                                 {"L", 3000000.0}}};

struct SynthPerson {
    std::string age_token;
    double age{};
    bool male{};
    bool chief{};
    std::string poswrchief;
    std::string income_token;
    std::optional<double> income;
    std::string area;
};

class Draw {
  public:
    explicit Draw(std::uint64_t seed) : engine_{seed} {}
    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>{lo, hi}(engine_);
    }

  private:
    std::mt19937_64 engine_;
};

std::string region_token(std::size_t region) {
    return region < 10 ? "0" + std::to_string(region) : std::to_string(region);
}

std::string gender_token(bool male, GenderEncoding encoding) {
    if (encoding == GenderEncoding::male0_female1) {
        return male ? "0" : "1";
    }
    return male ? "1" : "2";
}

bool generator_is_adult(double age, AgeEncoding encoding) {
    return encoding == AgeEncoding::years ? age >= 15.0 : age >= 4.0;
}

HouseholdAggregate truth_for(const Strata &strata, const std::vector<SynthPerson> &members,
                             const SynthParams &params) {
    auto out = HouseholdAggregate{};
    out.key = make_household_key(strata, params.scheme);
    out.size = members.size();
    out.label_area = members.front().area;
    out.label_chief_gender = std::string{no_chief_label};
    auto total = 0.0;
    for (const auto &m : members) {
        const auto adult = generator_is_adult(m.age, params.age_encoding);
        ++(adult ? out.n_adults : out.n_children);
        out.scale_oxford += !adult ? 0.5 : (m.chief ? 1.0 : 0.7);
        out.scale_faofam += !adult ? 0.5 : (m.male ? 1.0 : 0.8);
        if (m.chief) {
            out.label_chief_gender = gender_token(m.male, params.gender_encoding);
        }
        if (m.income) {
            total += *m.income;
        }
    }
    out.scale_dmp = std::pow(static_cast<double>(out.n_adults) +
                                 params.dmp_c * static_cast<double>(out.n_children),
                             params.dmp_s);
    if (params.income_mode != IncomeMode::none) {
        out.total_income = total;
        const auto scale = params.scaled_with == ScaleKind::oxford   ? out.scale_oxford
                           : params.scaled_with == ScaleKind::faofam ? out.scale_faofam
                                                                     : out.scale_dmp;
        out.scaled_income = total / scale;
    }
    return out;
}

double oracle_weight(double age, bool adult_threshold_met, bool chief, bool male, ScaleKind kind) {
    (void)age;
    if (!adult_threshold_met) {
        return 0.5;
    }
    if (kind == ScaleKind::oxford) {
        return chief ? 1.0 : 0.7;
    }
    return male ? 1.0 : 0.8;
}

} // namespace

void validate_synth_params(const SynthParams &params) {
    if (params.n_households == 0 || params.n_regions == 0 || params.max_milieux == 0 ||
        params.max_clusters == 0 || params.max_households_per_cluster == 0 ||
        params.max_household_size == 0) {
        throw Error{ErrorCode::config_error, "synthetic parameters must all be at least 1"};
    }
    if (params.anomalies && params.n_households < 3) {
        throw Error{ErrorCode::config_error, "anomaly injection needs at least 3 households"};
    }
    validate_weight_domain(ScaleSpec{ScaleKind::dmp, params.dmp_c, params.dmp_s});
}

SynthDatabase generate(const SynthParams &params) {
    validate_synth_params(params);
    auto draw = Draw{params.seed};
    auto db = SynthDatabase{};

    const auto no_chief_at = params.anomalies ? params.n_households / 4 : params.n_households;
    const auto two_chiefs_at = params.anomalies ? params.n_households / 2 : params.n_households;
    const auto dirty_area_at = params.anomalies ? 3 * params.n_households / 4 : params.n_households;

    auto push = [&](Variable v, std::string token) { db.columns[v].push_back(std::move(token)); };

    auto household_index = std::size_t{0};
    auto continuous_number = std::size_t{0};
    for (std::size_t region = 1; region <= params.n_regions; ++region) {
        const auto quota = params.n_households / params.n_regions +
                           (region <= params.n_households % params.n_regions ? 1 : 0);
        if (quota == 0) {
            continue;
        }
        auto milieu = std::size_t{1};
        auto clusters_in_milieu = draw.between(1, params.max_clusters);
        auto cluster = std::size_t{1};
        auto cluster_capacity = draw.between(1, params.max_households_per_cluster);
        auto in_cluster = std::size_t{0};

        for (std::size_t q = 0; q < quota; ++q, ++household_index) {
            if (in_cluster == cluster_capacity) {
                if (cluster < clusters_in_milieu || milieu == params.max_milieux) {
                    ++cluster;
                } else {
                    ++milieu;
                    cluster = 1;
                    clusters_in_milieu = draw.between(1, params.max_clusters);
                }
                cluster_capacity = draw.between(1, params.max_households_per_cluster);
                in_cluster = 0;
            }
            ++in_cluster;
            ++continuous_number;
            const auto strata =
                Strata{region_token(region), std::to_string(milieu), std::to_string(cluster),
                       std::to_string(params.renumber_households ? in_cluster : continuous_number)};

            const auto forced_pair = household_index == two_chiefs_at ||
                                     household_index == dirty_area_at;
            const auto size =
                std::max<std::size_t>(draw.between(1, params.max_household_size), forced_pair ? 2 : 1);
            const auto chief_index = draw.between(0, size - 1);

            auto members = std::vector<SynthPerson>(size);
            for (std::size_t i = 0; i < size; ++i) {
                auto &m = members[i];
                if (params.age_encoding == AgeEncoding::years) {
                    const auto years = draw.between(0, 90);
                    m.age = years == 0 ? 0.5 : static_cast<double>(years);
                    m.age_token = years == 0 ? "0.5" : std::to_string(years);
                } else {
                    const auto cls = draw.between(1, 18);
                    m.age = static_cast<double>(cls);
                    m.age_token = std::to_string(cls);
                }
                m.male = draw.between(0, 1) == 0;
                m.chief = i == chief_index && household_index != no_chief_at;
                if (household_index == two_chiefs_at && i == (chief_index + 1) % size) {
                    m.chief = true;
                }
                m.poswrchief = m.chief ? "1" : std::to_string(draw.between(2, 9));
                switch (params.income_mode) {
                case IncomeMode::letters: {
                    const auto &code = elim1_codes[draw.between(0, elim1_codes.size() - 1)];
                    m.income_token = code.code;
                    m.income = code.amount;
                    break;
                }
                case IncomeMode::numeric: {
                    const auto amount = draw.between(0, 500) * 1000;
                    m.income_token = std::to_string(amount);
                    m.income = static_cast<double>(amount);
                    break;
                }
                case IncomeMode::none:
                    break;
                }
                m.area = strata.region;
            }
            if (household_index == dirty_area_at) {
                members.back().area = region_token(region + params.n_regions);
            }

            for (const auto &m : members) {
                push(Variable::region, strata.region);
                push(Variable::milieu, strata.milieu);
                push(Variable::cluster, strata.cluster);
                push(Variable::household, strata.household);
                push(Variable::age, m.age_token);
                push(Variable::gender, gender_token(m.male, params.gender_encoding));
                push(Variable::poswrchief, m.poswrchief);
                if (params.income_mode != IncomeMode::none) {
                    push(Variable::income, m.income_token);
                }
                if (params.anomalies) {
                    push(Variable::area, m.area);
                }
                db.persons.emplace_back(
                    strata, m.age_token, gender_token(m.male, params.gender_encoding), m.poswrchief,
                    params.income_mode != IncomeMode::none ? std::optional{m.income_token}
                                                           : std::nullopt,
                    params.anomalies ? std::optional{m.area} : std::nullopt);
            }
            db.ground_truth.push_back(truth_for(strata, members, params));
        }
    }
    return db;
}

std::vector<std::filesystem::path> write_column_layout(const SynthDatabase &db,
                                                       const SynthParams &params,
                                                       const std::filesystem::path &dir) {
    auto ec = std::error_code{};
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error{ErrorCode::io_error, "cannot create '" + dir.string() + "'"};
    }
    auto written = std::vector<std::filesystem::path>{};
    for (const auto &[variable, tokens] : db.columns) {
        auto name = std::string{default_column_file(variable)};
        if (variable == Variable::income && params.income_mode == IncomeMode::numeric) {
            name = "income.txt";
        }
        write_lines(dir / name, tokens);
        written.push_back(dir / name);
    }

    auto ini = std::vector<std::string>{
        "# generated by hdbprep synth, seed " + std::to_string(params.seed),
        "[input]",
        "format = columns",
    };
    if (params.anomalies) {
        ini.emplace_back("area = area.txt");
    }
    ini.insert(ini.end(), {"", "[identity]", "prefixes = " + std::string{params.scheme.letters()},
                           "", "[encoding]",
                           "age = " + std::to_string(static_cast<int>(params.age_encoding)),
                           "gender = " + std::to_string(static_cast<int>(params.gender_encoding)),
                           "", "[income]", "mode = " + std::string{to_string(params.income_mode)},
                           "", "[scales]", "output = oxford, faofam, dmp",
                           "dmp_c = " + format_number(params.dmp_c),
                           "dmp_s = " + format_number(params.dmp_s),
                           "scaled = " + std::string{to_string(params.scaled_with)}, "", "[run]",
                           "out_dir = out"});
    write_lines(dir / "hdbprep.ini", ini);
    written.push_back(dir / "hdbprep.ini");

    write_household_table(db.ground_truth, dir / "groundtruth.csv");
    written.push_back(dir / "groundtruth.csv");
    return written;
}

void write_person_table(const SynthDatabase &db, const std::filesystem::path &path) {
    auto header = std::string{};
    for (const auto &[variable, tokens] : db.columns) {
        header += (header.empty() ? "" : ",") + std::string{to_string(variable)};
    }
    auto lines = std::vector<std::string>{header};
    const auto rows = db.persons.size();
    for (std::size_t i = 0; i < rows; ++i) {
        auto line = std::string{};
        for (const auto &[variable, tokens] : db.columns) {
            line += (line.empty() ? "" : ",") + tokens[i];
        }
        lines.push_back(std::move(line));
    }
    write_lines(path, lines);
}

std::map<std::string, HouseholdAggregate>
oracle_aggregate(std::span<const PersonRecord> persons,
                 std::span<const std::optional<double>> incomes, const OracleConfig &config) {
    if (!incomes.empty() && incomes.size() != persons.size()) {
        throw Error{ErrorCode::length_mismatch, "oracle: incomes and persons differ in length"};
    }
    struct Accumulator {
        HouseholdAggregate aggregate;
        std::optional<double> income;
        bool seen_chief{false};
    };
    auto table = std::unordered_map<std::string, Accumulator>{};

    for (std::size_t i = 0; i < persons.size(); ++i) {
        const auto &p = persons[i];
        const auto key = make_household_key(p.strata(), config.scheme);
        const auto age = parse_age(p.age_raw(), config.age_encoding).value;
        const auto adult = config.age_encoding == AgeEncoding::years ? age >= 15.0 : age >= 4.0;
        const auto male = !adult || parse_gender(p.gender_raw(), config.gender_encoding) == Gender::male;

        auto [it, inserted] = table.try_emplace(key.canonical());
        auto &acc = it->second;
        auto &a = acc.aggregate;
        if (inserted) {
            a.key = key;
            a.label_area = p.area();
            a.label_chief_gender = std::string{no_chief_label};
        }
        ++a.size;
        ++(adult ? a.n_adults : a.n_children);
        a.scale_oxford += oracle_weight(age, adult, p.is_chief(), male, ScaleKind::oxford);
        a.scale_faofam += oracle_weight(age, adult, p.is_chief(), male, ScaleKind::faofam);
        if (p.is_chief()) {
            a.label_chief_gender = p.gender_raw();
        }
        if (!incomes.empty()) {
            if (!incomes[i]) {
                throw Error{ErrorCode::missing_income, "oracle: person without income", i + 1};
            }
            acc.income = acc.income.value_or(0.0) + *incomes[i];
        }
    }

    auto result = std::map<std::string, HouseholdAggregate>{};
    for (auto &[key, acc] : table) {
        auto &a = acc.aggregate;
        a.scale_dmp = std::pow(static_cast<double>(a.n_adults) +
                                   config.dmp_c * static_cast<double>(a.n_children),
                               config.dmp_s);
        if (acc.income) {
            a.total_income = acc.income;
            const auto scale = config.scaled_with == ScaleKind::oxford   ? a.scale_oxford
                               : config.scaled_with == ScaleKind::faofam ? a.scale_faofam
                                                                         : a.scale_dmp;
            a.scaled_income = *acc.income / scale;
        }
        result.emplace(key, std::move(a));
    }
    return result;
}

} // namespace hdbprep
