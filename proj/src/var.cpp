#include "causalflow/var.hpp"

#include <cmath>

#include "causalflow/errors.hpp"
#include "causalflow/stats.hpp"

namespace causalflow {

void VarSpec::validate() const {
    if (m != 2) throw ValidationError("VarSpec: only bivariate systems are supported");
    if (p < 1) throw ValidationError("VarSpec: lag order must be >= 1");
    if (!intercept) throw ValidationError("VarSpec: intercept is always included");
}

namespace {

// Build (Y, X) for a VAR(p) with the first usable row at `trim` (>= p).
// Regressor order: intercept, lag-1 block (x, y), ..., lag-p block, trend.
void build_design(const Eigen::MatrixXd& data, const VarSpec& spec, int trim,
                  Eigen::MatrixXd& Y, Eigen::MatrixXd& X) {
    int n = static_cast<int>(data.rows());
    int t_eff = n - trim;
    int k = spec.regressors_per_equation();
    Y = data.bottomRows(t_eff);
    X.resize(t_eff, k);
    int col = 0;
    X.col(col++).setOnes();
    for (int lag = 1; lag <= spec.p; ++lag) {
        X.block(0, col, t_eff, 2) = data.block(trim - lag, 0, t_eff, 2);
        col += 2;
    }
    if (spec.trend) {
        // centered index over the estimation sample
        double mid = 0.5 * (t_eff - 1);
        for (int t = 0; t < t_eff; ++t) X(t, col) = static_cast<double>(t) - mid;
        ++col;
    }
}

VarFit fit_with_trim(const Eigen::MatrixXd& data, const VarSpec& spec, int trim) {
    spec.validate();
    int n = static_cast<int>(data.rows());
    if (data.cols() != 2) throw ValidationError("fit_ols: data must have 2 columns");
    if (n < 3 * spec.p + 5) throw ValidationError("fit_ols: sample too short for p=" +
                                                  std::to_string(spec.p));

    Eigen::MatrixXd Y, X;
    build_design(data, spec, trim, Y, X);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) throw NumericalError("fit_ols: singular regressor matrix");
    Eigen::MatrixXd B = qr.solve(Y);  // k x 2, column per equation

    VarFit fit;
    fit.spec = spec;
    fit.t_eff = static_cast<int>(Y.rows());
    fit.c = B.row(0).transpose();
    fit.phi.resize(spec.p);
    for (int lag = 0; lag < spec.p; ++lag) {
        // B rows are regressors; phi[l](eq, var) transposes the block
        fit.phi[lag] = B.block(1 + 2 * lag, 0, 2, 2).transpose();
    }
    if (spec.trend) fit.trend_coef = B.row(X.cols() - 1).transpose();
    fit.residuals = Y - X * B;
    fit.sigma_u = fit.residuals.transpose() * fit.residuals / static_cast<double>(fit.t_eff);
    return fit;
}

Eigen::MatrixXd pair_matrix(const PairedSample& pair) {
    pair.validate();
    Eigen::MatrixXd data(pair.size(), 2);
    data.col(0) = pair.x.values;
    data.col(1) = pair.y.values;
    return data;
}

}  // namespace

VarFit fit_ols(const Eigen::MatrixXd& data, const VarSpec& spec) {
    return fit_with_trim(data, spec, spec.p);
}

VarFit fit_ols(const PairedSample& pair, const VarSpec& spec) {
    return fit_ols(pair_matrix(pair), spec);
}

BicChoice select_lags_bic(const Eigen::MatrixXd& data, int p_max, bool trend) {
    if (p_max < 1) throw ValidationError("select_lags_bic: p_max must be >= 1");
    int n = static_cast<int>(data.rows());
    if (n - p_max < 3 * p_max + 5)
        throw ValidationError("select_lags_bic: sample too short for p_max=" +
                              std::to_string(p_max));
    double t_star = static_cast<double>(n - p_max);
    BicChoice choice;
    double best = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= p_max; ++p) {
        VarSpec spec;
        spec.p = p;
        spec.trend = trend;
        VarFit fit = fit_with_trim(data, spec, p_max);
        double ld = std::log(fit.sigma_u.determinant());
        double n_coef = 2.0 * spec.regressors_per_equation();
        double bic = ld + std::log(t_star) / t_star * n_coef;
        choice.criteria.push_back(bic);
        if (bic < best) {  // strict: ties keep the smaller p
            best = bic;
            choice.p = p;
        }
    }
    return choice;
}

BicChoice select_lags_bic(const PairedSample& pair, int p_max, bool trend) {
    return select_lags_bic(pair_matrix(pair), p_max, trend);
}

ResidualCorrTest residual_corr_test(const VarFit& fit) {
    int k = fit.spec.regressors_per_equation();
    if (fit.t_eff <= 2 + k)
        throw ValidationError("residual_corr_test: too few observations");
    double s00 = fit.sigma_u(0, 0), s11 = fit.sigma_u(1, 1), s01 = fit.sigma_u(0, 1);
    if (!(s00 > 0.0) || !(s11 > 0.0))
        throw NumericalError("residual_corr_test: degenerate residual covariance");
    ResidualCorrTest test;
    test.rho_u = s01 / std::sqrt(s00 * s11);
    if (1.0 - test.rho_u * test.rho_u < 1e-14)
        throw NumericalError("residual_corr_test: residuals are perfectly correlated");
    double df = static_cast<double>(fit.t_eff - k);
    test.t_stat = test.rho_u * std::sqrt(df) / std::sqrt(1.0 - test.rho_u * test.rho_u);
    test.p_value = stats::student_t_two_sided_p(test.t_stat, df);
    test.stars = stats::significance_stars(test.p_value);
    return test;
}

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> stationary_autocov(const Eigen::Matrix2d& a,
                                                               const Eigen::Matrix2d& sigma) {
    Eigen::EigenSolver<Eigen::Matrix2d> es(a, false);
    double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    if (rho >= 1.0 - 1e-8)
        throw NumericalError("stationary_autocov: spectral radius " + std::to_string(rho) +
                             " is not < 1");
    // vec(G0) = (I4 - A (x) A)^{-1} vec(sigma), column-major vec
    Eigen::Matrix4d kron;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            kron.block<2, 2>(2 * i, 2 * j) = a(i, j) * a;
    Eigen::Matrix4d lhs = Eigen::Matrix4d::Identity() - kron;
    Eigen::Vector4d vec_sigma(sigma(0, 0), sigma(1, 0), sigma(0, 1), sigma(1, 1));
    Eigen::Vector4d g = lhs.colPivHouseholderQr().solve(vec_sigma);
    Eigen::Matrix2d g0;
    g0 << g(0), g(2), g(1), g(3);
    g0 = 0.5 * (g0 + g0.transpose()).eval();
    return {g0, a * g0};
}

}  // namespace causalflow
