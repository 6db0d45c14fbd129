#include "hdbprep/config.h"
#include "hdbprep/error.h"
#include "hdbprep/pipeline.h"
#include "hdbprep/synth.h"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace hdbprep;

struct Overrides {
    std::string config_path{"hdbprep.ini"};
    std::string out_dir;
    bool paper_literal{false};
    bool paper_sentinel{false};
    bool sort{false};
    double dmp_c{};
    double dmp_s{};
    std::string scale;
    std::vector<std::string> scales;
    std::string prefixes;
    std::string age_encoding;
    std::string gender_encoding;
    std::string missing_age;
    std::size_t skip_header{};

    CLI::Option *dmp_c_opt{};
    CLI::Option *dmp_s_opt{};
    CLI::Option *skip_header_opt{};
};

void add_pipeline_options(CLI::App &cmd, Overrides &o) {
    cmd.add_option("-c,--config", o.config_path, "Configuration file")->capture_default_str();
    cmd.add_option("-o,--out-dir", o.out_dir, "Output directory (overrides [run] out_dir)");
    cmd.add_flag("--paper-literal", o.paper_literal,
                 "Reproduce the legacy income map: F = 115000, unknown letters become 0");
    cmd.add_flag("--paper-sentinel", o.paper_sentinel,
                 "Emit weight 0.99 for unreadable age or gender instead of failing");
    cmd.add_flag("--sort", o.sort, "Stable-sort persons by household key before grouping");
    o.dmp_c_opt = cmd.add_option("--dmp-c", o.dmp_c, "DMP child weight in [0,1]");
    o.dmp_s_opt = cmd.add_option("--dmp-s", o.dmp_s, "DMP economies-of-scale exponent in [0,1]");
    cmd.add_option("--scale", o.scale, "Scale used for scaled income")
        ->check(CLI::IsMember({"oxford", "faofam", "dmp"}));
    cmd.add_option("--scales", o.scales, "Scale files to write")
        ->check(CLI::IsMember({"oxford", "faofam", "dmp"}));
    cmd.add_option("--prefixes", o.prefixes, "Key prefix letters, e.g. RMCH or DMCH");
    cmd.add_option("--age-encoding", o.age_encoding, "years | classes");
    cmd.add_option("--gender-encoding", o.gender_encoding, "0/1 | 1/2");
    cmd.add_option("--missing-age", o.missing_age, "paper-compat | strict");
    o.skip_header_opt =
        cmd.add_option("--skip-header", o.skip_header, "Header lines to drop from column files");
}

PipelineConfig resolve(const Overrides &o) {
    auto config = load_config(o.config_path);
    if (!o.out_dir.empty()) {
        config.out_dir = o.out_dir;
    }
    config.paper_literal = config.paper_literal || o.paper_literal;
    config.paper_sentinel = config.paper_sentinel || o.paper_sentinel;
    config.sort = config.sort || o.sort;
    if (o.dmp_c_opt->count() > 0) {
        config.dmp_c = o.dmp_c;
    }
    if (o.dmp_s_opt->count() > 0) {
        config.dmp_s = o.dmp_s;
    }
    if (!o.scale.empty()) {
        config.scaled_with = scale_kind_from_string(o.scale);
    }
    if (!o.scales.empty()) {
        config.scales.clear();
        for (const auto &s : o.scales) {
            config.scales.push_back(scale_kind_from_string(s));
        }
    }
    if (!o.prefixes.empty()) {
        config.scheme = PrefixScheme::parse(o.prefixes);
    }
    if (!o.age_encoding.empty()) {
        config.age_encoding = age_encoding_from_string(o.age_encoding);
    }
    if (!o.gender_encoding.empty()) {
        config.gender_encoding = gender_encoding_from_string(o.gender_encoding);
    }
    if (!o.missing_age.empty()) {
        config.missing_age = missing_age_policy_from_string(o.missing_age);
    }
    if (o.skip_header_opt->count() > 0) {
        config.skip_header = o.skip_header;
    }
    return config;
}

struct SynthOptions {
    SynthParams params;
    std::string out_dir;
    std::string age_encoding{"years"};
    std::string gender_encoding{"0/1"};
    std::string income_mode{"letters"};
    std::string prefixes{"RMCH"};
    bool table{false};
};

int run_synth(SynthOptions &o) {
    o.params.age_encoding = age_encoding_from_string(o.age_encoding);
    o.params.gender_encoding = gender_encoding_from_string(o.gender_encoding);
    o.params.income_mode = income_mode_from_string(o.income_mode);
    o.params.scheme = PrefixScheme::parse(o.prefixes);
    const auto db = generate(o.params);
    auto written = write_column_layout(db, o.params, o.out_dir);
    if (o.table) {
        const auto path = std::filesystem::path{o.out_dir} / "persons.csv";
        write_person_table(db, path);
        written.push_back(path);
    }
    std::cout << "persons: " << db.persons.size() << '\n';
    std::cout << "households: " << db.ground_truth.size() << '\n';
    for (const auto &path : written) {
        std::cout << "wrote: " << path.string() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Household survey microdata preparation"};
    app.require_subcommand(1);

    auto overrides = Overrides{};
    auto *identify = app.add_subcommand("identify", "Build household keys (identhousehold.txt)");
    add_pipeline_options(*identify, overrides);
    auto *recode = app.add_subcommand("recode-income", "Recode income letters (monthlyincome.txt)");
    add_pipeline_options(*recode, overrides);
    auto *aggregate = app.add_subcommand("aggregate", "Run household passes one at a time");
    add_pipeline_options(*aggregate, overrides);
    auto pass_names = std::vector<std::string>{"all"};
    aggregate
        ->add_option("-p,--pass", pass_names,
                     "oxford, faofam, dmp, size, income, area, chief or all")
        ->capture_default_str();
    auto *run = app.add_subcommand("run", "Full pipeline in one pass, plus households.csv");
    add_pipeline_options(*run, overrides);

    auto synth_opts = SynthOptions{};
    auto *synth = app.add_subcommand("synth", "Write a synthetic survey with known aggregates");
    synth->add_option("--seed", synth_opts.params.seed)->capture_default_str();
    synth->add_option("--households", synth_opts.params.n_households)->capture_default_str();
    synth->add_option("--regions", synth_opts.params.n_regions)->capture_default_str();
    synth->add_option("--max-size", synth_opts.params.max_household_size)->capture_default_str();
    synth->add_option("-o,--out-dir", synth_opts.out_dir)->required();
    synth->add_flag("--anomalies", synth_opts.params.anomalies,
                    "Add a household without chief, one with two chiefs and a dirty area");
    synth->add_flag("--renumber", synth_opts.params.renumber_households,
                    "Restart household numbers in every cluster");
    synth->add_option("--age-encoding", synth_opts.age_encoding)->capture_default_str();
    synth->add_option("--gender-encoding", synth_opts.gender_encoding)->capture_default_str();
    synth->add_option("--income-mode", synth_opts.income_mode, "none | numeric | letters")
        ->capture_default_str();
    synth->add_option("--prefixes", synth_opts.prefixes)->capture_default_str();
    synth->add_flag("--table", synth_opts.table, "Also write persons.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) {
            return run_synth(synth_opts);
        }
        const auto config = resolve(overrides);
        auto report = RunReport{};
        if (identify->parsed()) {
            report = run_identify(config);
        } else if (recode->parsed()) {
            report = run_recode_income(config);
        } else if (aggregate->parsed()) {
            auto passes = std::vector<Pass>{};
            for (const auto &name : pass_names) {
                if (name == "all") {
                    passes.insert(passes.end(), {Pass::oxford, Pass::faofam, Pass::dmp, Pass::size,
                                                 Pass::income, Pass::area, Pass::chief});
                } else {
                    passes.push_back(pass_from_string(name));
                }
            }
            report = run_passes(config, passes);
        } else {
            report = run_pipeline(config);
        }
        print_report(std::cout, report);
        return 0;
    } catch (const Error &e) {
        std::cerr << "hdbprep: " << e.what() << '\n';
        return is_data_error(e.code()) ? 1 : 2;
    } catch (const std::exception &e) {
        std::cerr << "hdbprep: " << e.what() << '\n';
        return 2;
    }
}
