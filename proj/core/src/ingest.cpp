#include "hdbprep/ingest.h"

#include "hdbprep/error.h"
#include "hdbprep/text.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hdbprep {

namespace {

/// Splits on '\n', dropping one trailing '\r' per line. Trailing blank lines are removed.
std::vector<std::string_view> physical_lines(std::string_view content) {
    auto lines = std::vector<std::string_view>{};
    while (!content.empty()) {
        const auto eol = content.find('\n');
        auto line = content.substr(0, eol);
        if (line.ends_with('\r')) {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (eol == std::string_view::npos) {
            break;
        }
        content.remove_prefix(eol + 1);
    }
    while (!lines.empty() && text::trim(lines.back()).empty()) {
        lines.pop_back();
    }
    return lines;
}

std::optional<std::string> optional_token(const ColumnSet &columns, Variable variable,
                                          std::size_t index) {
    const auto it = columns.find(variable);
    if (it == columns.end() || it->second.empty()) {
        return std::nullopt;
    }
    return it->second[index];
}

} // namespace

std::string_view to_string(Variable variable) noexcept {
    switch (variable) {
    case Variable::region: return "region";
    case Variable::milieu: return "milieu";
    case Variable::cluster: return "cluster";
    case Variable::household: return "household";
    case Variable::age: return "age";
    case Variable::gender: return "gender";
    case Variable::poswrchief: return "poswrchief";
    case Variable::income: return "income";
    case Variable::area: return "area";
    }
    return "invalid";
}

Variable variable_from_string(std::string_view name) {
    for (auto v : {Variable::region, Variable::milieu, Variable::cluster, Variable::household,
                   Variable::age, Variable::gender, Variable::poswrchief, Variable::income,
                   Variable::area}) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw Error{ErrorCode::config_error, "unknown variable '" + std::string{name} + "'"};
}

std::string read_text_file(const std::filesystem::path &path) {
    auto in = std::ifstream{path, std::ios::binary};
    if (!in) {
        throw Error{ErrorCode::io_error, "cannot open '" + path.string() + "' for reading"};
    }
    auto buffer = std::ostringstream{};
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error{ErrorCode::io_error, "failed reading '" + path.string() + "'"};
    }
    return std::move(buffer).str();
}

std::vector<std::string> split_column_text(std::string_view content, std::size_t skip_header) {
    auto lines = physical_lines(text::strip_bom(content));
    auto tokens = std::vector<std::string>{};
    for (std::size_t i = skip_header; i < lines.size(); ++i) {
        const auto token = text::trim(lines[i]);
        if (token.empty()) {
            throw Error{ErrorCode::blank_line, "blank interior line", i + 1};
        }
        tokens.emplace_back(token);
    }
    if (tokens.empty()) {
        throw Error{ErrorCode::empty_file, "no tokens"};
    }
    return tokens;
}

std::vector<std::string> read_column_file(const ColumnSource &source, std::size_t skip_header) {
    const auto content = read_text_file(source.path);
    try {
        return split_column_text(content, skip_header);
    } catch (const Error &e) {
        throw Error{e.code(), source.path.string() + " (" + std::string{to_string(source.variable)} +
                                  "): " + e.detail(),
                    e.line()};
    }
}

std::vector<PersonRecord> zip_columns(const ColumnSet &columns) {
    for (auto v : required_variables) {
        if (!columns.contains(v)) {
            throw Error{ErrorCode::missing_column,
                        "required column '" + std::string{to_string(v)} + "' not provided"};
        }
    }
    const auto expected = columns.at(Variable::region).size();
    for (const auto &[variable, tokens] : columns) {
        const auto optional = variable == Variable::income || variable == Variable::area;
        if (optional && tokens.empty()) {
            continue;
        }
        if (tokens.size() != expected) {
            throw Error{ErrorCode::length_mismatch,
                        "column '" + std::string{to_string(variable)} + "' has " +
                            std::to_string(tokens.size()) + " tokens, expected " +
                            std::to_string(expected)};
        }
    }

    const auto column = [&](Variable v) -> const std::vector<std::string> & {
        return columns.at(v);
    };
    auto records = std::vector<PersonRecord>{};
    records.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i) {
        try {
            records.emplace_back(Strata{column(Variable::region)[i], column(Variable::milieu)[i],
                                        column(Variable::cluster)[i],
                                        column(Variable::household)[i]},
                                 column(Variable::age)[i], column(Variable::gender)[i],
                                 column(Variable::poswrchief)[i],
                                 optional_token(columns, Variable::income, i),
                                 optional_token(columns, Variable::area, i));
        } catch (const Error &e) {
            throw e.with_line(i + 1);
        }
    }
    return records;
}

std::vector<std::string> split_delimited_line(std::string_view line, char delimiter) {
    auto fields = std::vector<std::string>{};
    auto field = std::string{};
    auto in_quotes = false;
    auto was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const auto ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"' && text::trim(field).empty() && !was_quoted) {
            field.clear();
            in_quotes = true;
            was_quoted = true;
        } else if (ch == delimiter) {
            fields.push_back(was_quoted ? field : std::string{text::trim(field)});
            field.clear();
            was_quoted = false;
        } else if (!was_quoted || ch == ' ' || ch == '\t') {
            field += ch;
        } else {
            throw Error{ErrorCode::row_arity_mismatch, "unexpected character after closing quote"};
        }
    }
    if (in_quotes) {
        throw Error{ErrorCode::row_arity_mismatch, "unterminated quoted field"};
    }
    fields.push_back(was_quoted ? field : std::string{text::trim(field)});
    return fields;
}

std::vector<PersonRecord> read_table(const TableSource &source) {
    const auto content = read_text_file(source.path);
    const auto lines = physical_lines(text::strip_bom(content));
    if (lines.empty()) {
        throw Error{ErrorCode::empty_file, source.path.string() + ": no header row"};
    }
    const auto header = split_delimited_line(lines.front(), source.delimiter);

    auto positions = std::map<Variable, std::size_t>{};
    for (const auto &[variable, name] : source.column_map) {
        auto found = false;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name) {
                positions[variable] = c;
                found = true;
                break;
            }
        }
        if (!found) {
            throw Error{ErrorCode::missing_column,
                        source.path.string() + ": header has no column '" + name + "' (for " +
                            std::string{to_string(variable)} + ")"};
        }
    }
    for (auto v : required_variables) {
        if (!positions.contains(v)) {
            throw Error{ErrorCode::missing_column,
                        "no column mapped for required variable '" + std::string{to_string(v)} +
                            "'"};
        }
    }

    auto records = std::vector<PersonRecord>{};
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line_number = i + 1;
        auto fields = std::vector<std::string>{};
        try {
            fields = split_delimited_line(lines[i], source.delimiter);
        } catch (const Error &e) {
            throw e.with_line(line_number);
        }
        if (fields.size() != header.size()) {
            throw Error{ErrorCode::row_arity_mismatch,
                        source.path.string() + ": row has " + std::to_string(fields.size()) +
                            " fields, header has " + std::to_string(header.size()),
                        line_number};
        }
        const auto field = [&](Variable v) { return fields[positions.at(v)]; };
        const auto optional_field = [&](Variable v) -> std::optional<std::string> {
            if (const auto it = positions.find(v); it != positions.end()) {
                return fields[it->second];
            }
            return std::nullopt;
        };
        try {
            records.emplace_back(Strata{field(Variable::region), field(Variable::milieu),
                                        field(Variable::cluster), field(Variable::household)},
                                 field(Variable::age), field(Variable::gender),
                                 field(Variable::poswrchief), optional_field(Variable::income),
                                 optional_field(Variable::area));
        } catch (const Error &e) {
            throw e.with_line(line_number);
        }
    }
    return records;
}

Age parse_age(std::string_view raw, AgeEncoding encoding, MissingAgePolicy policy) {
    const auto token = text::trim(raw);
    const auto value = text::parse_number(token);
    if (!value || *value < 0.0) {
        throw Error{ErrorCode::bad_age_token, "bad age token '" + std::string{raw} + "'"};
    }
    switch (encoding) {
    case AgeEncoding::years:
        return Age{*value, policy == MissingAgePolicy::strict && *value == 99.0};
    case AgeEncoding::five_year_classes:
        if (*value < 1.0 || std::floor(*value) != *value) {
            throw Error{ErrorCode::bad_age_token,
                        "age class must be a positive integer, got '" + std::string{raw} + "'"};
        }
        return Age{*value, false};
    }
    throw Error{ErrorCode::bad_encoding, "invalid age encoding"};
}

Gender parse_gender(std::string_view raw, GenderEncoding encoding) {
    const auto token = text::trim(raw);
    switch (encoding) {
    case GenderEncoding::male0_female1:
        if (token == "0") {
            return Gender::male;
        }
        if (token == "1") {
            return Gender::female;
        }
        break;
    case GenderEncoding::male1_female2:
        if (token == "1") {
            return Gender::male;
        }
        if (token == "2") {
            return Gender::female;
        }
        break;
    default:
        throw Error{ErrorCode::bad_encoding, "invalid gender encoding"};
    }
    throw Error{ErrorCode::bad_gender_token, "gender token '" + std::string{raw} +
                                                 "' is not valid under encoding " +
                                                 std::string{to_string(encoding)}};
}

} // namespace hdbprep
