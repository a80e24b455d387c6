#include "causalflow/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "causalflow/errors.hpp"

namespace causalflow::csv {

int Table::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

// Splits one logical CSV record; `text` iteration continues across embedded
// newlines inside quoted fields.
std::vector<std::string> split_record(const std::string& text, size_t& pos, char delim) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
            any = true;
        } else if (c == delim) {
            fields.push_back(field);
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            ++pos;
            fields.push_back(field);
            return fields;
        } else {
            field.push_back(c);
            any = true;
        }
        ++pos;
    }
    if (any || !field.empty()) fields.push_back(field);
    return fields;
}

}  // namespace

Table parse(const std::string& text, char delimiter) {
    Table table;
    size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        if (text[pos] == '#') {  // comment line
            while (pos < text.size() && text[pos] != '\n') ++pos;
            if (pos < text.size()) ++pos;
            continue;
        }
        auto fields = split_record(text, pos, delimiter);
        if (fields.empty()) continue;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    if (!have_header) throw DataError("csv: missing header row");
    return table;
}

Table read_file(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("csv: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), delimiter);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string escape_field(const std::string& field, char delimiter) {
    bool needs = false;
    for (char c : field) {
        if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    }
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace causalflow::csv
