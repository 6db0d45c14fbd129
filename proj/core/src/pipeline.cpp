#include "hdbprep/pipeline.h"

#include "hdbprep/error.h"
#include "hdbprep/identity.h"
#include "hdbprep/ingest.h"
#include "hdbprep/number_format.h"
#include "hdbprep/recode.h"
#include "hdbprep/text.h"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace hdbprep {

namespace {

template <typename Fn> auto in_stage(const char *stage, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error &e) {
        if (!e.stage().empty()) {
            throw;
        }
        throw e.with_stage(stage);
    }
}

std::string csv_field(const std::string &value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) {
        return value;
    }
    auto quoted = std::string{"\""};
    for (const auto ch : value) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string optional_number(const std::optional<double> &value) {
    return value ? format_number(*value) : std::string{};
}

void ingest_stage(const PipelineConfig &config, PreparedData &data) {
    if (config.input_format == InputFormat::table) {
        auto table = config.table;
        if (config.income_mode == IncomeMode::none) {
            table.column_map.erase(Variable::income);
        }
        data.persons = read_table(table);
        for (std::size_t i = 0; i < data.persons.size(); ++i) {
            data.lines.push_back(i + 2);
        }
        return;
    }

    auto columns = ColumnSet{};
    for (const auto &[variable, path] : config.column_files) {
        if (variable == Variable::income && config.income_mode == IncomeMode::none) {
            continue;
        }
        columns[variable] = read_column_file(ColumnSource{path, variable}, config.skip_header);
    }
    data.persons = zip_columns(columns);
    for (std::size_t i = 0; i < data.persons.size(); ++i) {
        data.lines.push_back(i + 1 + config.skip_header);
    }
}

void identify_stage(const PipelineConfig &config, PreparedData &data) {
    data.keys.reserve(data.persons.size());
    for (std::size_t i = 0; i < data.persons.size(); ++i) {
        try {
            data.keys.push_back(make_household_key(data.persons[i].strata(), config.scheme));
        } catch (const Error &e) {
            throw e.with_line(data.lines[i]);
        }
    }
}

void recode_stage(const PipelineConfig &config, PreparedData &data) {
    if (config.income_mode == IncomeMode::none) {
        return;
    }
    const auto map = config.income_mode == IncomeMode::letters ? effective_income_map(config)
                                                                : IncomeRangeMap{};
    data.incomes.reserve(data.persons.size());
    for (std::size_t i = 0; i < data.persons.size(); ++i) {
        const auto &raw = data.persons[i].income_raw();
        if (!raw) {
            data.incomes.emplace_back();
            continue;
        }
        try {
            if (config.income_mode == IncomeMode::letters) {
                data.incomes.emplace_back(income_from_letter(*raw, map));
            } else {
                const auto amount = text::parse_number(*raw);
                if (!amount) {
                    throw Error{ErrorCode::bad_income_token,
                                "income token '" + *raw + "' is not a number"};
                }
                data.incomes.emplace_back(*amount);
            }
        } catch (const Error &e) {
            throw e.with_line(data.lines[i]);
        }
    }

    for (const auto &path : config.extra_income_files) {
        const auto tokens = read_column_file(ColumnSource{path, Variable::income}, config.skip_header);
        if (tokens.size() != data.persons.size()) {
            throw Error{ErrorCode::length_mismatch,
                        path.string() + " has " + std::to_string(tokens.size()) +
                            " tokens, expected " + std::to_string(data.persons.size())};
        }
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const auto amount = text::parse_number(tokens[i]);
            if (!amount) {
                throw Error{ErrorCode::bad_income_token,
                            path.string() + ": income token '" + tokens[i] + "' is not a number",
                            data.lines[i]};
            }
            if (data.incomes[i]) {
                *data.incomes[i] += *amount;
            }
        }
    }
}

void ensure_directory(const std::filesystem::path &dir) {
    auto ec = std::error_code{};
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error{ErrorCode::io_error, "cannot create output directory '" + dir.string() + "'"};
    }
}

} // namespace

std::string dmp_file_name(double c, double s) {
    return "scaleDMP-" + format_number(c) + "-" + format_number(s) + ".txt";
}

std::string_view to_string(Pass pass) noexcept {
    switch (pass) {
    case Pass::oxford: return "oxford";
    case Pass::faofam: return "faofam";
    case Pass::dmp: return "dmp";
    case Pass::size: return "size";
    case Pass::income: return "income";
    case Pass::area: return "area";
    case Pass::chief: return "chief";
    }
    return "invalid";
}

Pass pass_from_string(std::string_view name) {
    for (auto p : {Pass::oxford, Pass::faofam, Pass::dmp, Pass::size, Pass::income, Pass::area,
                   Pass::chief}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw Error{ErrorCode::config_error, "unknown pass '" + std::string{name} + "'"};
}

void print_report(std::ostream &out, const RunReport &report) {
    out << "persons: " << report.persons << '\n';
    out << "households: " << report.households << '\n';
    for (const auto &skipped : report.skipped) {
        out << "skipped: " << skipped << '\n';
    }
    for (const auto &path : report.outputs) {
        out << "wrote: " << path.string() << '\n';
    }
    out << "warnings: " << report.warnings.size() << '\n';
    for (const auto &w : report.warnings) {
        out << "warning: " << w.code << " line " << w.line;
        if (!w.key.empty()) {
            out << " household " << w.key;
        }
        out << ": " << w.message << '\n';
    }
}

PreparedData prepare(const PipelineConfig &config) {
    auto data = PreparedData{};
    in_stage("ingest", [&] { ingest_stage(config, data); });
    in_stage("identify", [&] { identify_stage(config, data); });
    in_stage("recode", [&] { recode_stage(config, data); });

    data.rows.reserve(data.persons.size());
    for (std::size_t i = 0; i < data.persons.size(); ++i) {
        const auto &person = data.persons[i];
        data.rows.push_back(KeyedMember{
            data.keys[i], Member{data.lines[i], person.area(), person.age_raw(),
                                 person.gender_raw(), person.is_chief(),
                                 data.incomes.empty() ? std::nullopt : data.incomes[i]}});
    }
    if (config.sort) {
        std::stable_sort(data.rows.begin(), data.rows.end(),
                         [](const KeyedMember &a, const KeyedMember &b) {
                             return a.key.canonical() < b.key.canonical();
                         });
    }
    return data;
}

AggregateConfig aggregate_config(const PipelineConfig &config) {
    return AggregateConfig{
        MemberRules{config.age_encoding, config.gender_encoding, config.missing_age,
                    config.paper_sentinel},
        config.dmp_c, config.dmp_s, config.income_mode != IncomeMode::none};
}

double scaled_income(double total_income, double scale) {
    if (!(scale > 0.0)) {
        throw Error{ErrorCode::zero_scale,
                    "cannot scale income by a non-positive scale " + format_number(scale)};
    }
    return total_income / scale;
}

void write_lines(const std::filesystem::path &path, std::span<const std::string> lines) {
    auto out = std::ofstream{path, std::ios::binary | std::ios::trunc};
    if (!out) {
        throw Error{ErrorCode::io_error, "cannot open '" + path.string() + "' for writing"};
    }
    for (const auto &line : lines) {
        out << line << '\n';
    }
    out.flush();
    if (!out) {
        throw Error{ErrorCode::io_error, "failed writing '" + path.string() + "'"};
    }
}

void write_household_table(std::span<const HouseholdAggregate> aggregates,
                           const std::filesystem::path &path) {
    auto lines = std::vector<std::string>{};
    lines.reserve(aggregates.size() + 1);
    lines.emplace_back("key,size,n_adults,n_children,scale_oxford,scale_faofam,scale_dmp,"
                       "total_income,scaled_income,label_area,label_chief_gender");
    for (const auto &a : aggregates) {
        auto row = csv_field(a.key.canonical());
        for (const auto &field :
             {std::to_string(a.size), std::to_string(a.n_adults), std::to_string(a.n_children),
              format_number(a.scale_oxford), format_number(a.scale_faofam),
              format_number(a.scale_dmp), optional_number(a.total_income),
              optional_number(a.scaled_income), csv_field(a.label_area),
              csv_field(a.label_chief_gender)}) {
            row += ',';
            row += field;
        }
        lines.push_back(std::move(row));
    }
    write_lines(path, lines);
}

RunReport run_identify(const PipelineConfig &config) {
    validate_config(config);
    const auto data = prepare(config);
    auto report = RunReport{};
    report.persons = data.persons.size();
    in_stage("output", [&] {
        ensure_directory(config.out_dir);
        auto lines = std::vector<std::string>{};
        lines.reserve(data.keys.size());
        for (const auto &key : data.keys) {
            lines.push_back(key.canonical());
        }
        const auto path = config.out_dir / identhousehold_file;
        write_lines(path, lines);
        report.outputs.push_back(path);
    });
    return report;
}

RunReport run_recode_income(const PipelineConfig &config) {
    validate_config(config);
    if (config.income_mode != IncomeMode::letters) {
        throw Error{ErrorCode::config_error,
                    "recode-income needs [income] mode = letters"};
    }
    const auto data = prepare(config);
    auto report = RunReport{};
    report.persons = data.persons.size();
    in_stage("output", [&] {
        ensure_directory(config.out_dir);
        auto lines = std::vector<std::string>{};
        for (const auto &income : data.incomes) {
            lines.push_back(optional_number(income));
        }
        const auto path = config.out_dir / monthlyincome_file;
        write_lines(path, lines);
        report.outputs.push_back(path);
    });
    return report;
}

RunReport run_passes(const PipelineConfig &config, std::span<const Pass> passes) {
    validate_config(config);
    const auto data = prepare(config);
    const auto rules = aggregate_config(config).rules;
    const auto runs = in_stage("aggregate", [&] { return group_consecutive(data.rows); });

    auto report = RunReport{};
    report.persons = data.persons.size();
    report.households = runs.size();
    in_stage("output", [&] { ensure_directory(config.out_dir); });

    for (const auto pass : passes) {
        if (pass == Pass::income && config.income_mode == IncomeMode::none) {
            report.skipped.emplace_back("income pass: no income configured");
            continue;
        }
        auto lines = std::vector<std::string>{};
        lines.reserve(runs.size());
        auto file = std::string{};
        in_stage("aggregate", [&] {
            for (const auto &run : runs) {
                switch (pass) {
                case Pass::oxford:
                    lines.push_back(format_number(reduce_scale_sum(run, ScaleKind::oxford, rules)));
                    break;
                case Pass::faofam:
                    lines.push_back(format_number(reduce_scale_sum(run, ScaleKind::faofam, rules)));
                    break;
                case Pass::dmp:
                    lines.push_back(
                        format_number(reduce_dmp(run, config.dmp_c, config.dmp_s, rules)));
                    break;
                case Pass::size:
                    lines.push_back(format_number(static_cast<double>(reduce_size(run))));
                    break;
                case Pass::income:
                    lines.push_back(format_number(reduce_total_income(run)));
                    break;
                case Pass::area:
                    lines.push_back(reduce_first_label(run, &report.warnings));
                    break;
                case Pass::chief:
                    lines.push_back(reduce_chief_label(run, &report.warnings));
                    break;
                }
            }
        });
        switch (pass) {
        case Pass::oxford: file = scaleoxford_file; break;
        case Pass::faofam: file = scalefaofam_file; break;
        case Pass::dmp: file = dmp_file_name(config.dmp_c, config.dmp_s); break;
        case Pass::size: file = sizehousehold_file; break;
        case Pass::income: file = totalincome_file; break;
        case Pass::area: file = labelregion_file; break;
        case Pass::chief: file = labelgender_file; break;
        }
        in_stage("output", [&] {
            const auto path = config.out_dir / file;
            write_lines(path, lines);
            report.outputs.push_back(path);
        });
    }
    return report;
}

RunReport run_pipeline(const PipelineConfig &config) {
    validate_config(config);
    const auto data = prepare(config);
    const auto settings = aggregate_config(config);

    auto report = RunReport{};
    report.persons = data.persons.size();
    auto aggregates = in_stage("aggregate", [&] {
        return aggregate_all(data.rows, settings, &report.warnings);
    });
    report.households = aggregates.size();

    const auto has_income = config.income_mode != IncomeMode::none;
    if (has_income) {
        in_stage("scale", [&] {
            for (auto &a : aggregates) {
                const auto scale = config.scaled_with == ScaleKind::oxford   ? a.scale_oxford
                                   : config.scaled_with == ScaleKind::faofam ? a.scale_faofam
                                                                             : a.scale_dmp;
                a.scaled_income = scaled_income(*a.total_income, scale);
            }
        });
    } else {
        report.skipped.emplace_back("income: no income configured; totalincome.txt and scaled "
                                    "income not produced");
    }

    in_stage("output", [&] {
        ensure_directory(config.out_dir);
        const auto emit = [&](std::string_view name, const std::vector<std::string> &lines) {
            const auto path = config.out_dir / name;
            write_lines(path, lines);
            report.outputs.push_back(path);
        };
        const auto column = [&](auto &&project) {
            auto lines = std::vector<std::string>{};
            lines.reserve(aggregates.size());
            for (const auto &a : aggregates) {
                lines.push_back(project(a));
            }
            return lines;
        };

        emit(identhousehold_file, [&] {
            auto lines = std::vector<std::string>{};
            for (const auto &key : data.keys) {
                lines.push_back(key.canonical());
            }
            return lines;
        }());
        if (config.income_mode == IncomeMode::letters) {
            auto lines = std::vector<std::string>{};
            for (const auto &income : data.incomes) {
                lines.push_back(optional_number(income));
            }
            emit(monthlyincome_file, lines);
        }
        for (const auto scale : config.scales) {
            switch (scale) {
            case ScaleKind::oxford:
                emit(scaleoxford_file,
                     column([](const auto &a) { return format_number(a.scale_oxford); }));
                break;
            case ScaleKind::faofam:
                emit(scalefaofam_file,
                     column([](const auto &a) { return format_number(a.scale_faofam); }));
                break;
            case ScaleKind::dmp:
                emit(dmp_file_name(config.dmp_c, config.dmp_s),
                     column([](const auto &a) { return format_number(a.scale_dmp); }));
                break;
            }
        }
        emit(sizehousehold_file, column([](const auto &a) {
                 return format_number(static_cast<double>(a.size));
             }));
        if (has_income) {
            emit(totalincome_file,
                 column([](const auto &a) { return optional_number(a.total_income); }));
        }
        emit(labelregion_file, column([](const auto &a) { return a.label_area; }));
        emit(labelgender_file, column([](const auto &a) { return a.label_chief_gender; }));

        const auto table = config.out_dir / households_table_file;
        write_household_table(aggregates, table);
        report.outputs.push_back(table);
    });
    return report;
}

} // namespace hdbprep
