#include "taskvec/pipeline/pipe_csv.hpp"

#include "taskvec/common/errors.hpp"
#include "taskvec/common/strings.hpp"

namespace taskvec::pipeline {

std::string escape_field(const std::string& field) {
    bool needs_quotes = field.find_first_of("|\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string render_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back('|');
        out += escape_field(fields[i]);
    }
    return out;
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += render_row(r);
        out.push_back('\n');
    }
    return out;
}

std::vector<std::vector<std::string>> parse_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;       // inside a quoted field
    bool field_started = false;
    size_t row_no = 1;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(row);
        row.clear();
        ++row_no;
    };

    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                // After the closing quote only a delimiter, row end, or end of
                // text may follow.
                if (i < n && text[i] != '|' && text[i] != '\n' && text[i] != '\r')
                    throw parse_error("row " + std::to_string(row_no) +
                                      ": text after closing quote");
                continue;
            }
            field.push_back(c);
            ++i;
            continue;
        }
        if (c == '"' && !field_started && field.empty()) {
            quoted = true;
            field_started = true;
            ++i;
            continue;
        }
        if (c == '|') {
            end_field();
            ++i;
            continue;
        }
        if (c == '\n') {
            end_row();
            ++i;
            continue;
        }
        if (c == '\r') {
            ++i;
            continue;
        }
        field.push_back(c);
        field_started = true;
        ++i;
    }
    if (quoted)
        throw parse_error("row " + std::to_string(row_no) + ": unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();

    // Drop rows that are entirely empty (blank lines).
    std::vector<std::vector<std::string>> out;
    for (auto& r : rows) {
        if (r.size() == 1 && r[0].empty()) continue;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> split_plain(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == '|') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace taskvec::pipeline
