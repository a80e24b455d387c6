#ifndef CAUSALFLOW_TESTS_HELPERS_HPP
#define CAUSALFLOW_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "causalflow/rng.hpp"
#include "causalflow/series.hpp"

namespace cf_test {

inline causalflow::TimeSeries make_series(const std::string& name, int first_year,
                                          const std::vector<double>& values) {
    causalflow::TimeSeries s;
    s.name = name;
    s.values = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                 static_cast<Eigen::Index>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) s.years.push_back(first_year + static_cast<int>(i));
    return s;
}

inline causalflow::TimeSeries noise_series(const std::string& name, int first_year, int n,
                                           uint64_t seed, double sd = 1.0) {
    causalflow::Rng rng(seed);
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = sd * rng.normal();
    return make_series(name, first_year, v);
}

inline causalflow::PairedSample make_pair(const std::vector<double>& x,
                                          const std::vector<double>& y, int first_year = 1900) {
    causalflow::PairedSample p;
    p.x = make_series("x", first_year, x);
    p.y = make_series("y", first_year, y);
    return p;
}

}  // namespace cf_test

#endif
