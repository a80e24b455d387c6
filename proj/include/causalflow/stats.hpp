#ifndef CAUSALFLOW_STATS_HPP
#define CAUSALFLOW_STATS_HPP

#include <vector>

namespace causalflow::stats {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value of a Student-t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// 0 (none), 1 (p<0.10), 2 (p<0.05), 3 (p<0.01).
int significance_stars(double p_value);

// Linear-interpolation quantile on an already sorted vector (type 7).
double quantile_sorted(const std::vector<double>& sorted, double q);

// log of the multivariate gamma function Gamma_m(a).
double log_multivariate_gamma(int m, double a);

}  // namespace causalflow::stats

#endif
