#include "causalflow/bayes.hpp"

#include <algorithm>
#include <cmath>

#include "causalflow/errors.hpp"
#include "causalflow/rng.hpp"
#include "causalflow/stats.hpp"

namespace causalflow {

void MinnesotaPrior::validate() const {
    if (!(lambda_overall > 0.0)) throw ValidationError("prior: lambda_overall must be > 0");
    if (!(lambda_cross > 0.0) || lambda_cross > 1.0)
        throw ValidationError("prior: lambda_cross must be in (0, 1]");
    if (lag_decay < 0.0) throw ValidationError("prior: lag_decay must be >= 0");
    if (!(scale_anchors(0) > 0.0) || !(scale_anchors(1) > 0.0))
        throw ValidationError("prior: scale anchors must be positive");
}

namespace {

constexpr int kM = 2;
constexpr double kNu0 = kM + 2.0;           // prior IW dof: E[Sigma] = S0
constexpr double kInterceptVar = 1e6;       // diffuse deterministic terms

struct Design {
    Eigen::MatrixXd Y, X;
    int t_eff = 0;
};

Design build_design(const PairedSample& pair, const VarSpec& spec) {
    spec.validate();
    pair.validate();
    int n = static_cast<int>(pair.size());
    if (n < 3 * spec.p + 5) throw ValidationError("fit_bayes: sample too short");
    int t_eff = n - spec.p;
    int k = spec.regressors_per_equation();
    Design d;
    d.t_eff = t_eff;
    d.Y.resize(t_eff, 2);
    d.Y.col(0) = pair.x.values.tail(t_eff);
    d.Y.col(1) = pair.y.values.tail(t_eff);
    d.X.resize(t_eff, k);
    int col = 0;
    d.X.col(col++).setOnes();
    for (int lag = 1; lag <= spec.p; ++lag) {
        d.X.block(0, col, t_eff, 1) = pair.x.values.segment(spec.p - lag, t_eff);
        d.X.block(0, col + 1, t_eff, 1) = pair.y.values.segment(spec.p - lag, t_eff);
        col += 2;
    }
    if (spec.trend) {
        double mid = 0.5 * (t_eff - 1);
        for (int t = 0; t < t_eff; ++t) d.X(t, col) = static_cast<double>(t) - mid;
    }
    return d;
}

struct PriorMoments {
    Eigen::VectorXd omega0_diag;  // prior coefficient variances (per column scale)
    Eigen::MatrixXd b0;           // prior mean, k x 2
    Eigen::Matrix2d s0;
};

PriorMoments prior_moments(const VarSpec& spec, const MinnesotaPrior& prior,
                           const Design& design) {
    prior.validate();
    int k = spec.regressors_per_equation();
    PriorMoments pm;
    pm.omega0_diag.resize(k);
    pm.b0 = Eigen::MatrixXd::Zero(k, 2);
    int col = 0;
    pm.omega0_diag(col++) = kInterceptVar;
    for (int lag = 1; lag <= spec.p; ++lag) {
        double decay = std::pow(static_cast<double>(lag), prior.lag_decay);
        for (int v = 0; v < 2; ++v) {
            double sd = prior.lambda_overall / decay / prior.scale_anchors(v);
            pm.omega0_diag(col) = sd * sd;
            if (lag == 1) pm.b0(col, v) = prior.prior_mean_own_first_lag;
            ++col;
        }
    }
    if (spec.trend) {
        double var_trend = design.X.col(k - 1).squaredNorm() / design.t_eff;
        double sd = 100.0 * prior.lambda_overall / std::sqrt(std::max(var_trend, 1e-12));
        pm.omega0_diag(col) = sd * sd;
    }
    pm.s0 = prior.scale_anchors.cwiseProduct(prior.scale_anchors).asDiagonal();
    return pm;
}

struct Posterior {
    Eigen::MatrixXd b_bar;       // k x 2
    Eigen::MatrixXd omega_bar;   // k x k
    Eigen::Matrix2d s_bar;
    double nu_bar = 0;
    double log_det_omega0 = 0;
    double log_det_omega_bar = 0;
    Eigen::Matrix2d s0;
    int t_eff = 0;
};

Posterior compute_posterior(const Design& d, const PriorMoments& pm) {
    int k = static_cast<int>(pm.omega0_diag.size());
    Eigen::MatrixXd omega0_inv = pm.omega0_diag.cwiseInverse().asDiagonal();
    Eigen::MatrixXd precision = omega0_inv + d.X.transpose() * d.X;
    Eigen::LLT<Eigen::MatrixXd> llt(precision);
    if (llt.info() != Eigen::Success)
        throw NumericalError("fit_bayes: posterior precision not positive definite");
    Eigen::MatrixXd rhs = omega0_inv * pm.b0 + d.X.transpose() * d.Y;

    Posterior post;
    post.t_eff = d.t_eff;
    post.s0 = pm.s0;
    post.b_bar = llt.solve(rhs);
    post.omega_bar = llt.solve(Eigen::MatrixXd::Identity(k, k));
    post.nu_bar = kNu0 + d.t_eff;
    Eigen::Matrix2d cross = pm.s0 + d.Y.transpose() * d.Y +
                            pm.b0.transpose() * omega0_inv * pm.b0 -
                            post.b_bar.transpose() * precision * post.b_bar;
    post.s_bar = 0.5 * (cross + cross.transpose());
    post.log_det_omega0 = pm.omega0_diag.array().log().sum();
    double ld = 0.0;
    for (int i = 0; i < k; ++i) ld += std::log(llt.matrixL()(i, i));
    post.log_det_omega_bar = -2.0 * ld;  // det(Omega_bar) = 1/det(precision)
    return post;
}

PosteriorDraw unpack_draw(const Eigen::MatrixXd& coef, const Eigen::Matrix2d& sigma,
                          const VarSpec& spec) {
    PosteriorDraw draw;
    draw.c = coef.row(0).transpose();
    draw.phi.resize(spec.p);
    for (int lag = 0; lag < spec.p; ++lag)
        draw.phi[lag] = coef.block(1 + 2 * lag, 0, 2, 2).transpose();
    if (spec.trend) draw.trend_coef = coef.row(coef.rows() - 1).transpose();
    draw.sigma_u = sigma;
    return draw;
}

}  // namespace

MinnesotaPrior default_prior(const PairedSample& pair, const VarSpec& spec) {
    MinnesotaPrior prior;
    int n = static_cast<int>(pair.size());
    int t_eff = n - spec.p;
    for (int v = 0; v < 2; ++v) {
        const Eigen::VectorXd& s = (v == 0) ? pair.x.values : pair.y.values;
        Eigen::VectorXd y = s.tail(t_eff);
        Eigen::MatrixXd X(t_eff, 2);
        X.col(0).setOnes();
        X.col(1) = s.segment(spec.p - 1, t_eff);
        Eigen::Vector2d beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
        Eigen::VectorXd resid = y - X * beta;
        double dof = std::max(t_eff - 2, 1);
        prior.scale_anchors(v) = std::sqrt(resid.squaredNorm() / dof);
    }
    return prior;
}

double log_marginal_likelihood(const PairedSample& pair, const VarSpec& spec,
                               const MinnesotaPrior& prior) {
    Design d = build_design(pair, spec);
    Posterior post = compute_posterior(d, prior_moments(spec, prior, d));
    double t = static_cast<double>(d.t_eff);
    double ml = -0.5 * t * kM * std::log(M_PI);
    ml += stats::log_multivariate_gamma(kM, 0.5 * post.nu_bar);
    ml -= stats::log_multivariate_gamma(kM, 0.5 * kNu0);
    ml += 0.5 * kNu0 * std::log(post.s0.determinant());
    ml -= 0.5 * post.nu_bar * std::log(post.s_bar.determinant());
    ml += 0.5 * kM * (post.log_det_omega_bar - post.log_det_omega0);
    return ml;
}

PosteriorDraws fit_bayes(const PairedSample& pair, const VarSpec& spec,
                         const MinnesotaPrior& prior, int n_draws, uint64_t seed) {
    if (n_draws < 1) throw ValidationError("fit_bayes: need at least one draw");
    Design d = build_design(pair, spec);
    Posterior post = compute_posterior(d, prior_moments(spec, prior, d));

    Eigen::LLT<Eigen::MatrixXd> omega_llt(post.omega_bar);
    if (omega_llt.info() != Eigen::Success)
        throw NumericalError("fit_bayes: posterior covariance not positive definite");
    Eigen::MatrixXd l_omega = omega_llt.matrixL();
    Eigen::Matrix2d s_bar_inv = post.s_bar.inverse();
    Eigen::LLT<Eigen::Matrix2d> s_inv_llt(0.5 * (s_bar_inv + s_bar_inv.transpose()).eval());
    if (s_inv_llt.info() != Eigen::Success)
        throw NumericalError("fit_bayes: posterior scale not positive definite");
    Eigen::Matrix2d l_sinv = s_inv_llt.matrixL();

    int k = static_cast<int>(post.b_bar.rows());
    PosteriorDraws out;
    out.spec = spec;
    out.seed = seed;
    out.mean_coef = post.b_bar;
    out.draws.resize(n_draws);

    for (int i = 0; i < n_draws; ++i) {
        Rng rng = Rng::stream(seed, static_cast<uint64_t>(i));
        // Sigma ~ IW(S_bar, nu_bar) via the Bartlett factor of Wishart(S_bar^-1, nu_bar)
        Eigen::Matrix2d bart = Eigen::Matrix2d::Zero();
        bart(0, 0) = std::sqrt(rng.chi_squared(post.nu_bar));
        bart(1, 0) = rng.normal();
        bart(1, 1) = std::sqrt(rng.chi_squared(post.nu_bar - 1.0));
        Eigen::Matrix2d w_chol = l_sinv * bart;  // Wishart draw W = w_chol * w_chol'
        Eigen::Matrix2d w = w_chol * w_chol.transpose();
        Eigen::Matrix2d sigma = w.inverse();
        sigma = 0.5 * (sigma + sigma.transpose()).eval();

        // B | Sigma ~ MN(B_bar, Omega_bar, Sigma)
        Eigen::MatrixXd z(k, 2);
        for (int r = 0; r < k; ++r)
            for (int c2 = 0; c2 < 2; ++c2) z(r, c2) = rng.normal();
        Eigen::LLT<Eigen::Matrix2d> sig_llt(sigma);
        if (sig_llt.info() != Eigen::Success)
            throw NumericalError("fit_bayes: sampled covariance not positive definite");
        Eigen::MatrixXd coef =
            post.b_bar + l_omega * z * Eigen::Matrix2d(sig_llt.matrixL()).transpose();
        out.draws[i] = unpack_draw(coef, sigma, spec);
    }
    return out;
}

std::vector<double> default_lambda_grid() { return {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0}; }

MinnesotaPrior optimize_hyperparameters(const PairedSample& pair, const VarSpec& spec,
                                        const std::vector<double>& lambda_grid,
                                        MinnesotaPrior base) {
    if (lambda_grid.empty()) throw ValidationError("optimize_hyperparameters: empty grid");
    MinnesotaPrior defaults = default_prior(pair, spec);
    base.scale_anchors = defaults.scale_anchors;
    double best_ml = -std::numeric_limits<double>::infinity();
    double best_lambda = lambda_grid.front();
    for (double lambda : lambda_grid) {
        MinnesotaPrior candidate = base;
        candidate.lambda_overall = lambda;
        double ml = log_marginal_likelihood(pair, spec, candidate);
        if (ml > best_ml) {
            best_ml = ml;
            best_lambda = lambda;
        }
    }
    base.lambda_overall = best_lambda;
    return base;
}

IrfBands posterior_irf_bands(const PosteriorDraws& draws, const Ordering& ordering,
                             int horizon, double band) {
    if (draws.draws.empty()) throw ValidationError("posterior_irf_bands: no draws");
    if (band < 0.0 || band >= 1.0) throw ValidationError("posterior_irf_bands: band in [0,1)");
    if (horizon < 0) throw ValidationError("posterior_irf_bands: horizon must be >= 0");

    IrfBands out;
    out.band = band;
    out.low_draw_warning = static_cast<int>(draws.draws.size()) < 100;

    size_t n = draws.draws.size();
    int hh = horizon + 1;
    // values[(h*2+r)*2+s] -> per-draw samples
    std::vector<std::vector<double>> values(static_cast<size_t>(hh) * 4);
    for (auto& v : values) v.reserve(n);
    for (const auto& draw : draws.draws) {
        StructuralFactor factor = cholesky_identify(draw.sigma_u, ordering);
        IrfResult r = irf_from(draw.phi, factor.impact(), horizon);
        for (int h = 0; h < hh; ++h)
            for (int rr = 0; rr < 2; ++rr)
                for (int s = 0; s < 2; ++s)
                    values[(static_cast<size_t>(h) * 2 + rr) * 2 + s].push_back(r.theta[h](rr, s));
    }
    double q_lo = 0.5 * (1.0 - band), q_hi = 0.5 * (1.0 + band);
    out.lo.resize(hh);
    out.med.resize(hh);
    out.hi.resize(hh);
    for (int h = 0; h < hh; ++h) {
        for (int rr = 0; rr < 2; ++rr)
            for (int s = 0; s < 2; ++s) {
                auto& v = values[(static_cast<size_t>(h) * 2 + rr) * 2 + s];
                std::sort(v.begin(), v.end());
                out.lo[h](rr, s) = stats::quantile_sorted(v, q_lo);
                out.med[h](rr, s) = stats::quantile_sorted(v, 0.5);
                out.hi[h](rr, s) = stats::quantile_sorted(v, q_hi);
            }
    }
    return out;
}

}  // namespace causalflow
