#include "causalflow/liang.hpp"

#include <cmath>

#include "causalflow/errors.hpp"

namespace causalflow {

void MomentSet::validate() const {
    if (!(sigma_ii > 0.0) || !(sigma_jj > 0.0))
        throw NumericalError("moments: degenerate series (zero variance)");
    if (sigma_ij * sigma_ij > sigma_ii * sigma_jj * (1.0 + 1e-12))
        throw NumericalError("moments: |sigma_ij| exceeds Cauchy-Schwarz bound");
}

MomentSet MomentSet::swapped() const {
    MomentSet s;
    s.sigma_ii = sigma_jj;
    s.sigma_jj = sigma_ii;
    s.sigma_ij = sigma_ij;
    s.sigma_i_di = sigma_j_dj;
    s.sigma_j_di = sigma_i_dj;
    s.sigma_i_dj = sigma_j_di;
    s.sigma_j_dj = sigma_i_di;
    s.var_di = var_dj;
    s.var_dj = var_di;
    s.n = n;
    return s;
}

namespace {

double pop_cov(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double ma = a.mean(), mb = b.mean();
    return ((a.array() - ma) * (b.array() - mb)).mean();
}

}  // namespace

MomentSet sample_moments(const PairedSample& pair, int k) {
    pair.validate();
    if (k <= 0) throw ValidationError("sample_moments: k must be positive");
    Eigen::Index n = pair.size();
    if (n <= k + 2) throw ValidationError("sample_moments: pair too short for k differences");

    Eigen::Index m = n - k;
    Eigen::VectorXd xi = pair.x.values.head(m);
    Eigen::VectorXd xj = pair.y.values.head(m);
    Eigen::VectorXd di = (pair.x.values.tail(m) - pair.x.values.head(m)) / static_cast<double>(k);
    Eigen::VectorXd dj = (pair.y.values.tail(m) - pair.y.values.head(m)) / static_cast<double>(k);

    MomentSet ms;
    ms.sigma_ii = pop_cov(xi, xi);
    ms.sigma_jj = pop_cov(xj, xj);
    ms.sigma_ij = pop_cov(xi, xj);
    ms.sigma_i_di = pop_cov(xi, di);
    ms.sigma_j_di = pop_cov(xj, di);
    ms.sigma_i_dj = pop_cov(xi, dj);
    ms.sigma_j_dj = pop_cov(xj, dj);
    ms.var_di = pop_cov(di, di);
    ms.var_dj = pop_cov(dj, dj);
    ms.n = static_cast<long>(m);
    ms.validate();
    return ms;
}

double info_flow(const MomentSet& m) {
    m.validate();
    double corr2 = m.sigma_ij * m.sigma_ij / (m.sigma_ii * m.sigma_jj);
    if (1.0 - corr2 <= 1e-10)
        throw NumericalError("info_flow: series are perfectly correlated");
    double num = m.sigma_ii * m.sigma_ij * m.sigma_j_di - m.sigma_ij * m.sigma_ij * m.sigma_i_di;
    double den = m.sigma_ii * m.sigma_ii * m.sigma_jj - m.sigma_ii * m.sigma_ij * m.sigma_ij;
    return num / den;
}

namespace {

// Population least squares of dX_i on (X_i, X_j) with intercept:
// returns (self coefficient, residual variance).
std::pair<double, double> self_dynamics(double s_ii, double s_jj, double s_ij,
                                        double s_i_di, double s_j_di, double v_di) {
    double det = s_ii * s_jj - s_ij * s_ij;
    if (std::fabs(det) < 1e-300) throw NumericalError("aux_estimates: singular level covariance");
    double b_i = (s_jj * s_i_di - s_ij * s_j_di) / det;
    double b_j = (s_ii * s_j_di - s_ij * s_i_di) / det;
    double resid_var = v_di - (b_i * s_i_di + b_j * s_j_di);
    return {b_i, std::max(resid_var, 0.0)};
}

}  // namespace

FlowAux aux_estimates(const MomentSet& m) {
    m.validate();
    FlowAux aux;
    auto [bi, qi] = self_dynamics(m.sigma_ii, m.sigma_jj, m.sigma_ij,
                                  m.sigma_i_di, m.sigma_j_di, m.var_di);
    aux.self_rate_i = bi;
    aux.noise_rate_i = qi / (2.0 * m.sigma_ii);
    auto [bj, qj] = self_dynamics(m.sigma_jj, m.sigma_ii, m.sigma_ij,
                                  m.sigma_j_dj, m.sigma_i_dj, m.var_dj);
    aux.self_rate_j = bj;
    aux.noise_rate_j = qj / (2.0 * m.sigma_jj);
    return aux;
}

IfResult normalized_info_flow(const MomentSet& m, const FlowAux& aux, int k) {
    IfResult r;
    r.k = k;
    r.t_j_to_i = info_flow(m);
    r.t_i_to_j = info_flow(m.swapped());

    double z_ji = std::fabs(r.t_j_to_i) + std::fabs(aux.self_rate_i) + std::fabs(aux.noise_rate_i);
    double z_ij = std::fabs(r.t_i_to_j) + std::fabs(aux.self_rate_j) + std::fabs(aux.noise_rate_j);
    if (z_ji == 0.0 || z_ij == 0.0)
        throw NumericalError("normalized_info_flow: normalizer is zero");
    r.tau_j_to_i = r.t_j_to_i / z_ji;
    r.tau_i_to_j = r.t_i_to_j / z_ij;
    return r;
}

IfResult info_flow_pair(const PairedSample& pair, int k) {
    MomentSet m = sample_moments(pair, k);
    return normalized_info_flow(m, aux_estimates(m), k);
}

}  // namespace causalflow
