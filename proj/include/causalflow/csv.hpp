#ifndef CAUSALFLOW_CSV_HPP
#define CAUSALFLOW_CSV_HPP

#include <string>
#include <vector>

namespace causalflow::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

// RFC-4180 reader with a configurable delimiter. Lines starting with '#'
// before or after the header are treated as comments and skipped.
Table read_file(const std::string& path, char delimiter = ',');
Table parse(const std::string& text, char delimiter = ',');

// Deterministic numeric formatting shared by every emitter ("%.12g").
std::string format_double(double v);

// Quote a field per RFC 4180 when it contains the delimiter, quotes or newlines.
std::string escape_field(const std::string& field, char delimiter = ',');

}  // namespace causalflow::csv

#endif
