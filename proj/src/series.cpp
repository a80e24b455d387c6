#include "causalflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "causalflow/csv.hpp"
#include "causalflow/errors.hpp"

namespace causalflow {

void TimeSeries::validate() const {
    if (values.size() < 2) throw ValidationError("series '" + name + "': needs at least 2 points");
    if (static_cast<Eigen::Index>(years.size()) != values.size())
        throw ValidationError("series '" + name + "': years/values length mismatch");
    for (size_t i = 1; i < years.size(); ++i) {
        if (years[i] != years[i - 1] + 1)
            throw ValidationError("series '" + name + "': years must be consecutive, got " +
                                  std::to_string(years[i - 1]) + " -> " + std::to_string(years[i]));
    }
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw ValidationError("series '" + name + "': non-finite value at year " +
                                  std::to_string(years[i]));
    }
}

TimeSeries TimeSeries::window(int first, int last) const {
    int lo = std::max(first, start_year());
    int hi = std::min(last, end_year());
    if (lo > hi) throw DataError("series '" + name + "': empty window " +
                                 std::to_string(first) + "-" + std::to_string(last));
    TimeSeries out;
    out.name = name;
    out.units = units;
    Eigen::Index i0 = lo - start_year();
    Eigen::Index n = hi - lo + 1;
    out.years.assign(years.begin() + i0, years.begin() + i0 + n);
    out.values = values.segment(i0, n);
    out.validate();
    return out;
}

void PairedSample::validate() const {
    x.validate();
    y.validate();
    if (x.years != y.years) throw ValidationError("paired sample: year supports differ");
    if (x.values.size() < 10) throw ValidationError("paired sample: needs at least 10 points");
}

PairedSample PairedSample::window(int first, int last) const {
    PairedSample out{x.window(first, last), y.window(first, last)};
    out.validate();
    return out;
}

namespace {

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') {
        // tolerate "1850.0"-style year columns
        double d = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') return false;
        if (d != std::floor(d)) return false;
        v = static_cast<long>(d);
    }
    out = static_cast<int>(v);
    return true;
}

bool parse_value(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0';
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

LoadResult load_csv(const std::string& path, const CsvSchema& schema,
                    const std::string& name, const std::string& units) {
    auto table = csv::read_file(path, schema.delimiter);
    int yc = table.column(schema.year_column);
    int vc = table.column(schema.value_column);
    if (yc < 0) throw DataError(path + ": year column '" + schema.year_column + "' not found");
    if (vc < 0) throw DataError(path + ": value column '" + schema.value_column + "' not found");

    std::vector<std::pair<int, double>> points;
    int dropped = 0, malformed = 0;
    for (const auto& row : table.rows) {
        if (static_cast<int>(row.size()) <= std::max(yc, vc)) {
            ++malformed;
            continue;
        }
        std::string ys = trimmed(row[yc]);
        std::string vs = trimmed(row[vc]);
        int year;
        if (!parse_int(ys, year)) {
            ++malformed;
            continue;
        }
        double value;
        if (vs.empty() || vs == "NA" || vs == "NaN" || vs == "nan") {
            ++dropped;
            continue;
        }
        if (!parse_value(vs, value)) {
            ++malformed;
            continue;
        }
        if (!std::isfinite(value)) {
            ++dropped;
            continue;
        }
        points.emplace_back(year, value);
    }
    size_t total = table.rows.size();
    if (total == 0) throw DataError(path + ": no data rows");
    if (static_cast<double>(malformed) > schema.max_bad_fraction * static_cast<double>(total))
        throw DataError(path + ": " + std::to_string(malformed) + " malformed rows of " +
                        std::to_string(total));

    TimeSeries s;
    s.name = name.empty() ? path : name;
    s.units = units;
    s.years.reserve(points.size());
    s.values.resize(static_cast<Eigen::Index>(points.size()));
    for (size_t i = 0; i < points.size(); ++i) {
        s.years.push_back(points[i].first);
        s.values[static_cast<Eigen::Index>(i)] = points[i].second;
    }
    s.validate();
    return LoadResult{std::move(s), dropped};
}

PairedSample align_pair(const TimeSeries& a, const TimeSeries& b) {
    a.validate();
    b.validate();
    int lo = std::max(a.start_year(), b.start_year());
    int hi = std::min(a.end_year(), b.end_year());
    if (hi - lo + 1 < 10)
        throw DataError("align_pair: overlap of '" + a.name + "' and '" + b.name +
                        "' is " + std::to_string(std::max(0, hi - lo + 1)) + " < 10 years");
    PairedSample pair{a.window(lo, hi), b.window(lo, hi)};
    pair.validate();
    return pair;
}

TimeSeries ppm_to_rf(const TimeSeries& co2_ppm, int base_year) {
    co2_ppm.validate();
    if (base_year < co2_ppm.start_year() || base_year > co2_ppm.end_year())
        throw ValidationError("ppm_to_rf: base year " + std::to_string(base_year) +
                              " outside series support");
    for (Eigen::Index i = 0; i < co2_ppm.values.size(); ++i) {
        if (!(co2_ppm.values[i] > 0.0))
            throw ValidationError("ppm_to_rf: nonpositive concentration at year " +
                                  std::to_string(co2_ppm.years[i]));
    }
    double base = co2_ppm.values[base_year - co2_ppm.start_year()];
    TimeSeries out;
    out.name = co2_ppm.name + "_rf";
    out.units = "W/m^2";
    out.years = co2_ppm.years;
    out.values = (co2_ppm.values.array() / base).log() * 5.35;
    out.validate();
    return out;
}

TimeSeries first_difference(const TimeSeries& s, int k) {
    s.validate();
    if (k <= 0) throw ValidationError("first_difference: k must be positive");
    if (s.values.size() <= k) throw ValidationError("first_difference: series shorter than k");
    Eigen::Index n = s.values.size() - k;
    TimeSeries out;
    out.name = s.name + "_d" + std::to_string(k);
    out.units = s.units;
    out.years.assign(s.years.begin(), s.years.begin() + n);
    out.values = (s.values.tail(n) - s.values.head(n)) / static_cast<double>(k);
    out.validate();
    return out;
}

}  // namespace causalflow
