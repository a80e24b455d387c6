#ifndef CAUSALFLOW_SERIES_HPP
#define CAUSALFLOW_SERIES_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace causalflow {

/// Annual series: strictly consecutive integer years, finite values, len >= 2.
struct TimeSeries {
    std::string name;
    std::string units;  // opaque label, e.g. "W/m^2", "ppm"
    std::vector<int> years;
    Eigen::VectorXd values;

    int start_year() const { return years.front(); }
    int end_year() const { return years.back(); }
    Eigen::Index size() const { return values.size(); }

    // Throws ValidationError when any invariant is broken.
    void validate() const;

    // Contiguous sub-series on [first, last] (inclusive, clipped to support).
    TimeSeries window(int first, int last) const;
};

/// Two series on an identical year support; x is the candidate cause,
/// y the response. Minimum usable length is 10.
struct PairedSample {
    TimeSeries x;
    TimeSeries y;

    Eigen::Index size() const { return x.values.size(); }
    const std::vector<int>& years() const { return x.years; }
    void validate() const;
    PairedSample window(int first, int last) const;
};

struct CsvSchema {
    std::string year_column;
    std::string value_column;
    char delimiter = ',';
    double max_bad_fraction = 0.1;  // malformed rows beyond this -> DataError
};

struct LoadResult {
    TimeSeries series;
    int dropped_rows = 0;  // rows with missing values, dropped with a warning
};

LoadResult load_csv(const std::string& path, const CsvSchema& schema,
                    const std::string& name = "", const std::string& units = "");

PairedSample align_pair(const TimeSeries& a, const TimeSeries& b);

// RF_t = 5.35 * ln(CO2_t / CO2_base); exactly zero at the base year.
TimeSeries ppm_to_rf(const TimeSeries& co2_ppm, int base_year);

// Forward k-difference divided by k (annual spacing), dated at the earlier year.
TimeSeries first_difference(const TimeSeries& s, int k = 1);

}  // namespace causalflow

#endif
