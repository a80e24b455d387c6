#include <doctest.h>

#include "causalflow/bayes.hpp"
#include "causalflow/errors.hpp"
#include "causalflow/sim.hpp"
#include "helpers.hpp"

using namespace causalflow;

namespace {

PairedSample random_walk_pair(int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(static_cast<size_t>(n)), y(static_cast<size_t>(n));
    double ax = 0.0, ay = 0.0;
    for (int i = 0; i < n; ++i) {
        ax += rng.normal();
        ay += 0.5 * rng.normal();
        x[static_cast<size_t>(i)] = ax;
        y[static_cast<size_t>(i)] = ay;
    }
    return cf_test::make_pair(x, y);
}

}  // namespace

TEST_CASE("flat prior reproduces OLS point estimates") {
    PairedSample pair = simulate_path(dgp_catalog(2), 300, 8);
    VarSpec spec;
    spec.p = 2;
    MinnesotaPrior prior = default_prior(pair, spec);
    prior.lambda_overall = 1e6;
    PosteriorDraws draws = fit_bayes(pair, spec, prior, 1, 1);
    VarFit ols = fit_ols(pair, spec);
    Eigen::MatrixXd ols_coef(spec.regressors_per_equation(), 2);
    ols_coef.row(0) = ols.c.transpose();
    for (int lag = 0; lag < spec.p; ++lag)
        ols_coef.block(1 + 2 * lag, 0, 2, 2) = ols.phi[lag].transpose();
    CHECK((draws.mean_coef - ols_coef).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("dogmatic prior pins the posterior at the random-walk mean") {
    PairedSample pair = simulate_path(dgp_catalog(2), 300, 9);
    VarSpec spec;
    spec.p = 1;
    MinnesotaPrior prior = default_prior(pair, spec);
    prior.lambda_overall = 1e-8;
    PosteriorDraws draws = fit_bayes(pair, spec, prior, 1, 1);
    CHECK(draws.mean_coef(1, 0) == doctest::Approx(1.0).epsilon(1e-4));  // own first lag
    CHECK(draws.mean_coef(2, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-4));
    CHECK(draws.mean_coef(1, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-4));
    CHECK(draws.mean_coef(2, 1) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("posterior mean approaches the truth on a long path") {
    PairedSample pair = simulate_path(dgp_catalog(1), 10000, 10);
    VarSpec spec;
    spec.p = 1;
    MinnesotaPrior prior = default_prior(pair, spec);
    PosteriorDraws draws = fit_bayes(pair, spec, prior, 10, 4);
    Eigen::Matrix2d phi_mean;
    phi_mean << draws.mean_coef(1, 0), draws.mean_coef(2, 0),
        draws.mean_coef(1, 1), draws.mean_coef(2, 1);
    CHECK((phi_mean - dgp_catalog(1).a).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("hyperparameter search follows the data") {
    VarSpec spec;
    spec.p = 1;
    SUBCASE("random walks want the tightest grid point") {
        PairedSample pair = random_walk_pair(2000, 21);
        MinnesotaPrior chosen = optimize_hyperparameters(pair, spec, default_lambda_grid());
        CHECK(chosen.lambda_overall == doctest::Approx(0.05));
    }
    SUBCASE("white noise wants a loose prior") {
        PairedSample pair = simulate_path(DgpSpec{}, 2000, 22);
        MinnesotaPrior chosen = optimize_hyperparameters(pair, spec, default_lambda_grid());
        CHECK(chosen.lambda_overall >= 0.5);
    }
    SUBCASE("singleton grid is returned unchanged") {
        PairedSample pair = simulate_path(DgpSpec{}, 200, 23);
        MinnesotaPrior chosen = optimize_hyperparameters(pair, spec, {0.7});
        CHECK(chosen.lambda_overall == doctest::Approx(0.7));
    }
    SUBCASE("empty grid is rejected") {
        PairedSample pair = simulate_path(DgpSpec{}, 200, 24);
        CHECK_THROWS_AS(optimize_hyperparameters(pair, spec, {}), ValidationError);
    }
}

TEST_CASE("posterior sampling is seed-deterministic") {
    PairedSample pair = simulate_path(dgp_catalog(3), 200, 12);
    VarSpec spec;
    spec.p = 2;
    MinnesotaPrior prior = default_prior(pair, spec);
    PosteriorDraws a = fit_bayes(pair, spec, prior, 50, 777);
    PosteriorDraws b = fit_bayes(pair, spec, prior, 50, 777);
    for (size_t i = 0; i < a.draws.size(); ++i) {
        CHECK(a.draws[i].sigma_u == b.draws[i].sigma_u);
        CHECK(a.draws[i].c == b.draws[i].c);
        for (int l = 0; l < spec.p; ++l) CHECK(a.draws[i].phi[l] == b.draws[i].phi[l]);
    }
    PosteriorDraws c = fit_bayes(pair, spec, prior, 50, 778);
    CHECK(a.draws[0].sigma_u != c.draws[0].sigma_u);
}

TEST_CASE("shrinkage toward the prior mean is monotone in lambda") {
    PairedSample pair = simulate_path(dgp_catalog(2), 150, 13);
    VarSpec spec;
    spec.p = 1;
    MinnesotaPrior prior = default_prior(pair, spec);
    Eigen::MatrixXd b0 = Eigen::MatrixXd::Zero(3, 2);
    b0(1, 0) = 1.0;
    b0(2, 1) = 1.0;
    Eigen::MatrixXd prev_dev;
    for (double lambda : {0.01, 0.05, 0.2, 1.0, 5.0}) {
        prior.lambda_overall = lambda;
        PosteriorDraws draws = fit_bayes(pair, spec, prior, 1, 1);
        Eigen::MatrixXd dev =
            (draws.mean_coef.middleRows(1, 2) - b0.middleRows(1, 2)).cwiseAbs();
        if (prev_dev.size() > 0) CHECK((dev - prev_dev).minCoeff() > -1e-9);
        prev_dev = dev;
    }
}

TEST_CASE("posterior IRF bands") {
    SUBCASE("identical draws collapse the band") {
        PosteriorDraws draws;
        draws.spec.p = 1;
        PosteriorDraw d;
        d.c = Eigen::Vector2d::Zero();
        d.phi = {Eigen::Matrix2d::Identity() * 0.5};
        d.sigma_u = Eigen::Matrix2d::Identity();
        draws.draws.assign(150, d);
        IrfBands bands = posterior_irf_bands(draws, Ordering::first(0), 8, 0.68);
        CHECK_FALSE(bands.low_draw_warning);
        for (int h = 0; h <= 8; ++h) {
            CHECK((bands.lo[h] - bands.hi[h]).cwiseAbs().maxCoeff() < 1e-14);
            CHECK(bands.med[h](0, 0) == doctest::Approx(std::pow(0.5, h)).epsilon(1e-12));
        }
    }
    SUBCASE("band = 0 degenerates to the median") {
        PairedSample pair = simulate_path(dgp_catalog(1), 200, 14);
        VarSpec spec;
        spec.p = 1;
        PosteriorDraws draws = fit_bayes(pair, spec, default_prior(pair, spec), 500, 5);
        IrfBands bands = posterior_irf_bands(draws, Ordering::first(0), 4, 0.0);
        for (int h = 0; h <= 4; ++h)
            CHECK((bands.lo[h] - bands.hi[h]).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("few draws raise the warning flag") {
        PairedSample pair = simulate_path(dgp_catalog(1), 200, 15);
        VarSpec spec;
        spec.p = 1;
        PosteriorDraws draws = fit_bayes(pair, spec, default_prior(pair, spec), 50, 6);
        IrfBands bands = posterior_irf_bands(draws, Ordering::first(0), 4, 0.68);
        CHECK(bands.low_draw_warning);
    }
}

TEST_CASE("posterior bands cover the OLS impulse responses") {
    // DGP(1), n = 150: the OLS point IRF should fall inside the 68% band at
    // every h <= 15 in a solid majority of replications.
    const int reps = 100;
    int covered = 0;
    for (int rep = 0; rep < reps; ++rep) {
        PairedSample pair = simulate_path(dgp_catalog(1), 150, 9000 + static_cast<uint64_t>(rep));
        VarSpec spec;
        spec.p = 1;
        VarFit ols = fit_ols(pair, spec);
        IrfResult point = irf(ols, cholesky_identify(ols.sigma_u, Ordering::first(0)), 15);
        MinnesotaPrior prior = optimize_hyperparameters(pair, spec, default_lambda_grid());
        PosteriorDraws draws = fit_bayes(pair, spec, prior, 10000, 31 + static_cast<uint64_t>(rep));
        IrfBands bands = posterior_irf_bands(draws, Ordering::first(0), 15, 0.68);
        bool inside = true;
        for (int h = 0; h <= 15 && inside; ++h)
            for (int r = 0; r < 2 && inside; ++r)
                for (int s = 0; s < 2; ++s) {
                    double v = point.theta[h](r, s);
                    if (v < bands.lo[h](r, s) - 1e-12 || v > bands.hi[h](r, s) + 1e-12) {
                        inside = false;
                        break;
                    }
                }
        if (inside) ++covered;
    }
    CHECK(covered >= 60);
}
