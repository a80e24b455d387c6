#include <doctest.h>

#include "causalflow/errors.hpp"
#include "causalflow/sim.hpp"
#include "causalflow/svar.hpp"
#include "helpers.hpp"

using namespace causalflow;

TEST_CASE("cholesky_identify closed forms") {
    SUBCASE("identity covariance") {
        for (int first : {0, 1}) {
            StructuralFactor f =
                cholesky_identify(Eigen::Matrix2d::Identity(), Ordering::first(first));
            CHECK((f.impact() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    SUBCASE("correlated covariance, both orderings") {
        double rho = 0.6;
        Eigen::Matrix2d sigma;
        sigma << 1.0, rho, rho, 1.0;
        StructuralFactor f0 = cholesky_identify(sigma, Ordering::first(0));
        Eigen::Matrix2d expect0;
        expect0 << 1.0, 0.0, rho, std::sqrt(1.0 - rho * rho);
        CHECK((f0.impact() - expect0).cwiseAbs().maxCoeff() < 1e-12);

        StructuralFactor f1 = cholesky_identify(sigma, Ordering::first(1));
        Eigen::Matrix2d expect1;
        expect1 << std::sqrt(1.0 - rho * rho), rho, 0.0, 1.0;
        CHECK((f1.impact() - expect1).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("non-PD covariance is rejected") {
        Eigen::Matrix2d bad;
        bad << 1.0, 2.0, 2.0, 1.0;
        CHECK_THROWS_AS(cholesky_identify(bad, Ordering::first(0)), NumericalError);
    }
}

TEST_CASE("factor reconstruction for random covariances") {
    Rng rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        double s1 = 0.2 + 2.0 * rng.uniform();
        double s2 = 0.2 + 2.0 * rng.uniform();
        double rho = 1.9 * (rng.uniform() - 0.5);
        Eigen::Matrix2d sigma;
        sigma << s1 * s1, rho * s1 * s2, rho * s1 * s2, s2 * s2;
        for (int first : {0, 1}) {
            StructuralFactor f = cholesky_identify(sigma, Ordering::first(first));
            Eigen::Matrix2d impact = f.impact();
            CHECK((impact * impact.transpose() - sigma).cwiseAbs().maxCoeff() < 1e-10);
            Eigen::Matrix2d p = f.ordering.permutation();
            Eigen::Matrix2d ordered = p * sigma * p.transpose();
            CHECK((f.b_ordered * f.b_ordered.transpose() - ordered).cwiseAbs().maxCoeff() <
                  1e-10);
            CHECK(f.b_ordered(0, 1) == 0.0);
            CHECK(f.b_ordered(0, 0) > 0.0);
            CHECK(f.b_ordered(1, 1) > 0.0);
        }
    }
}

TEST_CASE("impulse responses in closed form") {
    SUBCASE("no dynamics") {
        Eigen::Matrix2d b;
        b << 1.0, 0.0, 0.4, 0.9;
        IrfResult r = irf_from({Eigen::Matrix2d::Zero()}, b, 6);
        CHECK((r.theta[0] - b).cwiseAbs().maxCoeff() == 0.0);
        for (int h = 1; h <= 6; ++h) CHECK(r.theta[h].cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("scalar geometric decay") {
        Eigen::Matrix2d phi = Eigen::Matrix2d::Zero();
        phi(0, 0) = 0.5;
        IrfResult r = irf_from({phi}, Eigen::Matrix2d::Identity(), 10);
        for (int h = 0; h <= 10; ++h)
            CHECK(r.theta[h](0, 0) == doctest::Approx(std::pow(0.5, h)).epsilon(1e-12));
    }
    SUBCASE("zero impact restriction at h = 0 is exact") {
        Eigen::Matrix2d sigma;
        sigma << 1.0, 0.5, 0.5, 2.0;
        StructuralFactor f = cholesky_identify(sigma, Ordering::first(0));
        CHECK(f.impact()(0, 1) == 0.0);  // first-ordered variable, second's shock
        StructuralFactor g = cholesky_identify(sigma, Ordering::first(1));
        CHECK(g.impact()(1, 0) == 0.0);
    }
}

TEST_CASE("impulse responses match the conditional-mean-difference oracle") {
    // Twin-path oracle: same future shocks with and without a one-sd impulse.
    DgpSpec dgp = dgp_catalog(1);
    Eigen::Matrix2d b = build_b(0.0, Attribution::b12_zero);
    const int horizon = 6;
    const int paths = 100000;
    Eigen::MatrixXd mc = Eigen::MatrixXd::Zero(horizon + 1, 4);
    for (int shock = 0; shock < 2; ++shock) {
        Rng rng(4242);
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(horizon + 1, 2);
        for (int path = 0; path < paths; ++path) {
            Eigen::Vector2d base = Eigen::Vector2d::Zero();
            Eigen::Vector2d hit = b.col(shock);  // impulse at h = 0
            acc.row(0) += hit.transpose() - base.transpose();
            Eigen::Vector2d state_base = Eigen::Vector2d::Zero();
            Eigen::Vector2d state_hit = hit;
            for (int h = 1; h <= horizon; ++h) {
                Eigen::Vector2d eps(rng.normal(), rng.normal());
                state_base = dgp.c + dgp.a * state_base + b * eps;
                state_hit = dgp.c + dgp.a * state_hit + b * eps;
                acc.row(h) += (state_hit - state_base).transpose();
            }
        }
        mc.col(shock * 2) = acc.col(0) / paths;
        mc.col(shock * 2 + 1) = acc.col(1) / paths;
    }
    IrfResult r = irf_from({dgp.a}, b, horizon);
    for (int h = 0; h <= horizon; ++h)
        for (int shock = 0; shock < 2; ++shock)
            for (int target = 0; target < 2; ++target)
                CHECK(std::fabs(r.theta[h](target, shock) - mc(h, shock * 2 + target)) < 0.01);
}

TEST_CASE("FEVD properties") {
    SUBCASE("decoupled system keeps all variance at home") {
        Eigen::Matrix2d phi;
        phi << 0.4, 0.0, 0.0, 0.7;
        FevdResult f = fevd_from({phi}, Eigen::Matrix2d::Identity(), 20);
        for (const auto& sh : f.shares) {
            CHECK(sh(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(sh(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("shares sum to one and live in the unit interval") {
        Rng rng(33);
        for (int rep = 0; rep < 50; ++rep) {
            Eigen::Matrix2d a;
            a << 0.9 * (rng.uniform() - 0.5), 0.9 * (rng.uniform() - 0.5),
                0.9 * (rng.uniform() - 0.5), 0.9 * (rng.uniform() - 0.5);
            double rho = 1.8 * (rng.uniform() - 0.5);
            FevdResult f = fevd_from({a}, build_b(rho, Attribution::b12_zero), 15);
            for (const auto& sh : f.shares)
                for (int r = 0; r < 2; ++r) {
                    CHECK(std::fabs(sh(r, 0) + sh(r, 1) - 1.0) < 1e-10);
                    CHECK(sh(r, 0) >= 0.0);
                    CHECK(sh(r, 0) <= 1.0);
                }
        }
    }
    SUBCASE("diagonal covariance makes the ordering irrelevant") {
        Eigen::Matrix2d a;
        a << 0.5, 0.3, -0.2, 0.4;
        Eigen::Matrix2d sigma;
        sigma << 1.3, 0.0, 0.0, 0.6;
        VarFit fit;
        fit.spec.p = 1;
        fit.phi = {a};
        fit.sigma_u = sigma;
        fit.t_eff = 100;
        FevdResult f0 = fevd(fit, cholesky_identify(sigma, Ordering::first(0)), 15);
        FevdResult f1 = fevd(fit, cholesky_identify(sigma, Ordering::first(1)), 15);
        for (size_t h = 0; h < f0.shares.size(); ++h)
            CHECK((f0.shares[h] - f1.shares[h]).cwiseAbs().maxCoeff() < 1e-12);
        IrfResult i0 = irf(fit, cholesky_identify(sigma, Ordering::first(0)), 10);
        IrfResult i1 = irf(fit, cholesky_identify(sigma, Ordering::first(1)), 10);
        for (int h = 0; h <= 10; ++h)
            CHECK((i0.theta[h] - i1.theta[h]).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("shares are invariant to rescaling a variable with its shocks") {
        Eigen::Matrix2d a;
        a << 0.5, 0.2, -0.1, 0.6;
        Eigen::Matrix2d sigma;
        sigma << 1.0, 0.4, 0.4, 0.8;
        Eigen::Matrix2d scale = Eigen::Vector2d(3.7, 1.0).asDiagonal();
        Eigen::Matrix2d a2 = scale * a * scale.inverse();
        Eigen::Matrix2d sigma2 = scale * sigma * scale.transpose();
        for (int first : {0, 1}) {
            Eigen::Matrix2d sh1 =
                fevd_from({a}, cholesky_identify(sigma, Ordering::first(first)).impact(), 15)
                    .at_horizon(15);
            Eigen::Matrix2d sh2 =
                fevd_from({a2}, cholesky_identify(sigma2, Ordering::first(first)).impact(), 15)
                    .at_horizon(15);
            CHECK((sh1 - sh2).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("degenerate MSPE is rejected") {
        Eigen::Matrix2d zero = Eigen::Matrix2d::Zero();
        CHECK_THROWS_AS(fevd_from({zero}, zero, 5), NumericalError);
    }
}

TEST_CASE("irf oracle tolerance is honest") {
    // the twin-path check above used scale(1.0): assert max abs deviation < 0.01
    DgpSpec dgp = dgp_catalog(1);
    Eigen::Matrix2d b = build_b(0.0, Attribution::b12_zero);
    IrfResult r = irf_from({dgp.a}, b, 3);
    CHECK(r.theta[1](0, 1) == doctest::Approx(0.5 * 1.0).epsilon(1e-12));  // a12 * b22
}
