#ifndef CAUSALFLOW_BAYES_HPP
#define CAUSALFLOW_BAYES_HPP

#include <vector>

#include "causalflow/svar.hpp"
#include "causalflow/var.hpp"

namespace causalflow {

/// Minnesota-style shrinkage toward univariate random walks, in the natural
/// conjugate (normal-inverse-Wishart) form. The Kronecker prior covariance
/// cannot distinguish own from cross lags, so lambda_cross is carried in the
/// config surface but does not alter the prior scale.
struct MinnesotaPrior {
    double lambda_overall = 0.2;        // lambda_1
    double lambda_cross = 0.5;          // lambda_2, inert under the conjugate prior
    double lag_decay = 1.0;             // d
    double prior_mean_own_first_lag = 1.0;
    Eigen::Vector2d scale_anchors = Eigen::Vector2d::Ones();  // AR(1) residual sds

    void validate() const;
};

struct PosteriorDraw {
    Eigen::Vector2d c;
    std::vector<Eigen::Matrix2d> phi;
    std::optional<Eigen::Vector2d> trend_coef;
    Eigen::Matrix2d sigma_u;
};

struct PosteriorDraws {
    VarSpec spec;
    std::vector<PosteriorDraw> draws;
    Eigen::MatrixXd mean_coef;  // posterior mean, regressors x 2
    uint64_t seed = 0;
};

struct IrfBands {
    std::vector<Eigen::Matrix2d> lo, med, hi;  // h = 0..H
    double band = 0.68;
    bool low_draw_warning = false;
};

// AR(1) residual scale anchors + defaults for the pair.
MinnesotaPrior default_prior(const PairedSample& pair, const VarSpec& spec);

// Exact i.i.d. sampling from the conjugate matric-variate posterior.
PosteriorDraws fit_bayes(const PairedSample& pair, const VarSpec& spec,
                         const MinnesotaPrior& prior, int n_draws, uint64_t seed);

double log_marginal_likelihood(const PairedSample& pair, const VarSpec& spec,
                               const MinnesotaPrior& prior);

// Pick lambda_1 from the grid by closed-form marginal likelihood.
MinnesotaPrior optimize_hyperparameters(const PairedSample& pair, const VarSpec& spec,
                                        const std::vector<double>& lambda_grid,
                                        MinnesotaPrior base = MinnesotaPrior{});

std::vector<double> default_lambda_grid();  // {0.05, 0.1, 0.2, 0.5, 1, 2, 5}

// Pointwise posterior quantiles of the draw-wise IRFs; band is the central
// mass (0.68 -> quantiles 0.16 / 0.5 / 0.84).
IrfBands posterior_irf_bands(const PosteriorDraws& draws, const Ordering& ordering,
                             int horizon, double band = 0.68);

}  // namespace causalflow

#endif
