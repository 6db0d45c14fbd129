#include "hdbprep/config.h"

#include "hdbprep/error.h"
#include "hdbprep/text.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace hdbprep {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>, std::less<>> known_keys = {
    {"input",
     {"format", "dir", "region", "milieu", "cluster", "household", "age", "gender", "poswrchief",
      "income", "area", "income_extra", "skip_header", "table", "delimiter"}},
    {"columns",
     {"region", "milieu", "cluster", "household", "age", "gender", "poswrchief", "income",
      "area"}},
    {"identity", {"prefixes"}},
    {"encoding", {"age", "gender", "missing_age"}},
    {"income", {"mode", "default"}},
    {"income_map", {}},
    {"scales", {"output", "dmp_c", "dmp_s", "scaled"}},
    {"run", {"out_dir", "paper_literal", "paper_sentinel", "sort"}},
};

[[noreturn]] void config_fail(const std::string &message) {
    throw Error{ErrorCode::config_error, message};
}

double number_value(std::string_view key, std::string_view value) {
    const auto parsed = text::parse_number(text::trim(value));
    if (!parsed) {
        config_fail(std::string{key} + ": expected a number, got '" + std::string{value} + "'");
    }
    return *parsed;
}

bool bool_value(std::string_view key, std::string_view raw) {
    const auto value = text::trim(raw);
    if (value == "true" || value == "yes" || value == "1" || value == "on") {
        return true;
    }
    if (value == "false" || value == "no" || value == "0" || value == "off") {
        return false;
    }
    config_fail(std::string{key} + ": expected true or false, got '" + std::string{raw} + "'");
}

std::vector<std::string> list_value(std::string_view raw) {
    auto items = std::vector<std::string>{};
    auto rest = raw;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = text::trim(rest.substr(0, comma));
        if (!item.empty()) {
            items.emplace_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return items;
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &value) {
    const auto path = std::filesystem::path{std::string{text::trim(value)}};
    return path.is_absolute() ? path : base / path;
}

} // namespace

std::string_view to_string(IncomeMode mode) noexcept {
    switch (mode) {
    case IncomeMode::none: return "none";
    case IncomeMode::numeric: return "numeric";
    case IncomeMode::letters: return "letters";
    }
    return "invalid";
}

IncomeMode income_mode_from_string(std::string_view name) {
    if (name == "none") {
        return IncomeMode::none;
    }
    if (name == "numeric") {
        return IncomeMode::numeric;
    }
    if (name == "letters") {
        return IncomeMode::letters;
    }
    config_fail("income mode must be none, numeric or letters, got '" + std::string{name} + "'");
}

MissingAgePolicy missing_age_policy_from_string(std::string_view name) {
    if (name == "paper-compat") {
        return MissingAgePolicy::paper_compat;
    }
    if (name == "strict") {
        return MissingAgePolicy::strict;
    }
    config_fail("missing_age must be paper-compat or strict, got '" + std::string{name} + "'");
}

AgeEncoding age_encoding_from_string(std::string_view name) {
    if (name == "years") {
        return AgeEncoding::years;
    }
    if (name == "classes") {
        return AgeEncoding::five_year_classes;
    }
    const auto code = text::parse_number(name);
    if (!code || (*code != 1.0 && *code != 2.0)) {
        throw Error{ErrorCode::bad_encoding,
                    "age encoding must be 1, 2, years or classes, got '" + std::string{name} + "'"};
    }
    return age_encoding_from_code(static_cast<int>(*code));
}

GenderEncoding gender_encoding_from_string(std::string_view name) {
    if (name == "0/1") {
        return GenderEncoding::male0_female1;
    }
    if (name == "1/2") {
        return GenderEncoding::male1_female2;
    }
    const auto code = text::parse_number(name);
    if (!code || (*code != 1.0 && *code != 2.0)) {
        throw Error{ErrorCode::bad_encoding,
                    "gender encoding must be 1, 2, 0/1 or 1/2, got '" + std::string{name} + "'"};
    }
    return gender_encoding_from_code(static_cast<int>(*code));
}

std::string_view default_column_file(Variable variable) noexcept {
    switch (variable) {
    case Variable::region: return "region.txt";
    case Variable::milieu: return "milieu.txt";
    case Variable::cluster: return "cluster.txt";
    case Variable::household: return "household.txt";
    case Variable::age: return "age.txt";
    case Variable::gender: return "gender.txt";
    case Variable::poswrchief: return "poswrchief.txt";
    case Variable::income: return "monthlyincomeNT.txt";
    case Variable::area: return "area.txt";
    }
    return {};
}

PipelineConfig parse_config(std::string_view text_content, const std::filesystem::path &base_dir) {
    auto tree = pt::ptree{};
    try {
        auto stream = std::istringstream{std::string{text::strip_bom(text_content)}};
        pt::read_ini(stream, tree);
    } catch (const pt::ini_parser_error &e) {
        throw Error{ErrorCode::config_error, e.message(), e.line()};
    }

    for (const auto &[section, body] : tree) {
        const auto known = known_keys.find(section);
        if (known == known_keys.end()) {
            config_fail("unknown section [" + section + "]");
        }
        if (body.empty() && !body.data().empty()) {
            config_fail("key '" + section + "' must live inside a section");
        }
        if (section == "income_map") {
            continue;
        }
        for (const auto &[key, value] : body) {
            if (!known->second.contains(key)) {
                config_fail("unknown key '" + key + "' in section [" + section + "]");
            }
        }
    }

    auto config = PipelineConfig{};
    const auto get = [&](const std::string &section, const std::string &key) {
        auto result = std::optional<std::string>{};
        if (const auto s = tree.get_child_optional(pt::ptree::path_type{section, '\0'})) {
            if (const auto v = s->get_child_optional(pt::ptree::path_type{key, '\0'})) {
                result = std::string{text::trim(v->data())};
            }
        }
        return result;
    };

    auto input_dir = base_dir;
    if (const auto dir = get("input", "dir")) {
        input_dir = resolve(base_dir, *dir);
    }
    if (const auto format = get("input", "format")) {
        if (*format == "columns") {
            config.input_format = InputFormat::columns;
        } else if (*format == "table") {
            config.input_format = InputFormat::table;
        } else {
            config_fail("input format must be columns or table, got '" + *format + "'");
        }
    }

    if (const auto mode = get("income", "mode")) {
        config.income_mode = income_mode_from_string(*mode);
    }

    for (auto v : {Variable::region, Variable::milieu, Variable::cluster, Variable::household,
                   Variable::age, Variable::gender, Variable::poswrchief, Variable::income,
                   Variable::area}) {
        const auto name = std::string{to_string(v)};
        if (const auto file = get("input", name)) {
            config.column_files[v] = resolve(input_dir, *file);
        } else if (v == Variable::income) {
            if (config.income_mode == IncomeMode::letters) {
                config.column_files[v] = input_dir / default_column_file(v);
            } else if (config.income_mode == IncomeMode::numeric) {
                config.column_files[v] = input_dir / "income.txt";
            }
        } else if (v != Variable::area) {
            config.column_files[v] = input_dir / default_column_file(v);
        }
        if (const auto column = get("columns", name)) {
            config.table.column_map[v] = *column;
        }
    }
    if (const auto extra = get("input", "income_extra")) {
        for (const auto &file : list_value(*extra)) {
            config.extra_income_files.push_back(resolve(input_dir, file));
        }
    }
    if (const auto skip = get("input", "skip_header")) {
        const auto n = number_value("skip_header", *skip);
        if (n < 0 || n != static_cast<double>(static_cast<std::size_t>(n))) {
            config_fail("skip_header must be a non-negative integer");
        }
        config.skip_header = static_cast<std::size_t>(n);
    }
    if (const auto table = get("input", "table")) {
        config.table.path = resolve(input_dir, *table);
    }
    if (const auto delimiter = get("input", "delimiter")) {
        if (*delimiter == "\\t" || *delimiter == "tab") {
            config.table.delimiter = '\t';
        } else if (delimiter->size() == 1) {
            config.table.delimiter = delimiter->front();
        } else {
            config_fail("delimiter must be a single character, got '" + *delimiter + "'");
        }
    }

    if (const auto prefixes = get("identity", "prefixes")) {
        config.scheme = PrefixScheme::parse(*prefixes);
    }
    if (const auto age = get("encoding", "age")) {
        config.age_encoding = age_encoding_from_string(*age);
    }
    if (const auto gender = get("encoding", "gender")) {
        config.gender_encoding = gender_encoding_from_string(*gender);
    }
    if (const auto policy = get("encoding", "missing_age")) {
        config.missing_age = missing_age_policy_from_string(*policy);
    }

    if (const auto fallback = get("income", "default")) {
        config.income_default = number_value("income.default", *fallback);
    }
    if (const auto section = tree.get_child_optional(pt::ptree::path_type{"income_map", '\0'})) {
        auto map = IncomeRangeMap{};
        for (const auto &[code, value] : *section) {
            map.add(code, number_value("income_map." + code, value.data()));
        }
        if (!map.empty()) {
            config.income_map = std::move(map);
        }
    }

    if (const auto output = get("scales", "output")) {
        config.scales.clear();
        for (const auto &name : list_value(*output)) {
            config.scales.push_back(scale_kind_from_string(name));
        }
    }
    if (const auto c = get("scales", "dmp_c")) {
        config.dmp_c = number_value("dmp_c", *c);
    }
    if (const auto s = get("scales", "dmp_s")) {
        config.dmp_s = number_value("dmp_s", *s);
    }
    if (const auto scaled = get("scales", "scaled")) {
        config.scaled_with = scale_kind_from_string(*scaled);
    }

    if (const auto out = get("run", "out_dir")) {
        config.out_dir = resolve(base_dir, *out);
    }
    if (const auto flag = get("run", "paper_literal")) {
        config.paper_literal = bool_value("paper_literal", *flag);
    }
    if (const auto flag = get("run", "paper_sentinel")) {
        config.paper_sentinel = bool_value("paper_sentinel", *flag);
    }
    if (const auto flag = get("run", "sort")) {
        config.sort = bool_value("sort", *flag);
    }
    return config;
}

PipelineConfig load_config(const std::filesystem::path &path) {
    auto content = std::string{};
    try {
        content = read_text_file(path);
    } catch (const Error &e) {
        throw Error{ErrorCode::io_error, "configuration: " + e.detail()};
    }
    try {
        return parse_config(content, path.parent_path());
    } catch (const Error &e) {
        throw Error{e.code(), path.string() + ": " + e.detail(), e.line()};
    }
}

void validate_config(const PipelineConfig &config) {
    validate_weight_domain(ScaleSpec{ScaleKind::dmp, config.dmp_c, config.dmp_s});
    if (config.input_format == InputFormat::table) {
        if (config.table.path.empty()) {
            config_fail("table input needs [input] table = <path>");
        }
        if (config.income_mode != IncomeMode::none &&
            !config.table.column_map.contains(Variable::income)) {
            config_fail("income mode '" + std::string{to_string(config.income_mode)} +
                        "' needs [columns] income = <header name>");
        }
    }
    if (config.income_mode == IncomeMode::none && !config.extra_income_files.empty()) {
        config_fail("income_extra requires an income mode");
    }
    if (config.income_mode == IncomeMode::letters && !config.extra_income_files.empty()) {
        config_fail("income_extra columns are numeric; they cannot be combined with letter codes");
    }
    if (config.income_mode != IncomeMode::none && config.input_format == InputFormat::columns &&
        !config.column_files.contains(Variable::income)) {
        config_fail("income mode '" + std::string{to_string(config.income_mode)} +
                    "' needs [input] income = <file>");
    }
    if (config.income_mode != IncomeMode::none &&
        std::find(config.scales.begin(), config.scales.end(), config.scaled_with) ==
            config.scales.end()) {
        config_fail("scaled income uses the " + std::string{to_string(config.scaled_with)} +
                    " scale, which is not listed in [scales] output");
    }
}

IncomeRangeMap effective_income_map(const PipelineConfig &config) {
    auto map = config.income_map ? *config.income_map : elim1_default_map(config.paper_literal);
    if (config.income_default) {
        map.set_default(config.income_default);
    } else if (config.paper_literal && !map.default_amount()) {
        map.set_default(0.0);
    }
    return map;
}

} // namespace hdbprep
