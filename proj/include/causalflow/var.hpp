#ifndef CAUSALFLOW_VAR_HPP
#define CAUSALFLOW_VAR_HPP

#include <optional>
#include <vector>

#include "causalflow/series.hpp"

namespace causalflow {

struct VarSpec {
    int m = 2;            // bivariate throughout
    int p = 1;            // lag order
    bool intercept = true;
    bool trend = false;   // centered linear trend as exogenous regressor

    void validate() const;
    int regressors_per_equation() const { return m * p + (intercept ? 1 : 0) + (trend ? 1 : 0); }
};

struct VarFit {
    VarSpec spec;
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    std::vector<Eigen::Matrix2d> phi;           // Phi_1..Phi_p; phi[l](eq, var)
    std::optional<Eigen::Vector2d> trend_coef;
    Eigen::MatrixXd residuals;                  // t_eff x 2
    Eigen::Matrix2d sigma_u = Eigen::Matrix2d::Zero();  // divisor t_eff
    int t_eff = 0;
};

struct ResidualCorrTest {
    double rho_u = 0;
    double t_stat = 0;
    double p_value = 1;
    int stars = 0;  // 10% / 5% / 1% markers
};

struct BicChoice {
    int p = 1;
    std::vector<double> criteria;  // BIC(1..p_max) on the common trimmed sample
};

// Equation-by-equation least squares with a shared regressor set.
// `data` columns are the system variables in order (x, y).
VarFit fit_ols(const Eigen::MatrixXd& data, const VarSpec& spec);
VarFit fit_ols(const PairedSample& pair, const VarSpec& spec);

// BIC over p = 1..p_max, all candidates on the sample trimmed to p_max so the
// criteria are comparable; ties break toward smaller p.
BicChoice select_lags_bic(const Eigen::MatrixXd& data, int p_max, bool trend = false);
BicChoice select_lags_bic(const PairedSample& pair, int p_max, bool trend = false);

// t-test of the residual cross-correlation, df = t_eff - regressors/equation.
ResidualCorrTest residual_corr_test(const VarFit& fit);

// Stationary autocovariances of a VAR(1): Gamma0 solves the discrete Lyapunov
// equation, Gamma1(r, s) = cov(X_{r,t+1}, X_{s,t}) = A * Gamma0.
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> stationary_autocov(const Eigen::Matrix2d& a,
                                                               const Eigen::Matrix2d& sigma);

}  // namespace causalflow

#endif
