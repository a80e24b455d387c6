#include <doctest.h>

#include "causalflow/errors.hpp"
#include "causalflow/liang.hpp"
#include "causalflow/sim.hpp"
#include "causalflow/svar.hpp"
#include "helpers.hpp"

using namespace causalflow;

TEST_CASE("sample_moments of identical series") {
    TimeSeries s = cf_test::noise_series("s", 1900, 80, 3);
    PairedSample pair{s, s};
    pair.y.name = "y";
    MomentSet m = sample_moments(pair, 1);
    CHECK(m.sigma_ij == doctest::Approx(m.sigma_ii).epsilon(1e-14));
    CHECK(m.n == 79);
}

TEST_CASE("sample_moments rejects degenerate inputs") {
    std::vector<double> ramp(30), flat(30, 2.0);
    for (size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    PairedSample pair = cf_test::make_pair(ramp, flat);
    CHECK_THROWS_AS(sample_moments(pair, 1), NumericalError);

    PairedSample tiny = cf_test::make_pair({1, 2, 1, 3, 1, 4, 2, 3, 1, 2},
                                           {2, 1, 3, 1, 4, 1, 3, 2, 4, 1});
    CHECK_THROWS_AS(sample_moments(tiny, 9), ValidationError);
}

TEST_CASE("independent series have vanishing cross moments") {
    const int n = 100000;
    TimeSeries x = cf_test::noise_series("x", 1, n, 11);
    TimeSeries y = cf_test::noise_series("y", 1, n, 12);
    MomentSet m = sample_moments(PairedSample{x, y}, 1);
    CHECK(std::fabs(m.sigma_ij) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("flow is exactly zero when the covariance is zero") {
    Rng rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        MomentSet m;
        m.sigma_ii = 0.5 + rng.uniform();
        m.sigma_jj = 0.5 + rng.uniform();
        m.sigma_ij = 0.0;
        m.sigma_i_di = rng.normal();
        m.sigma_j_di = rng.normal();
        m.sigma_i_dj = rng.normal();
        m.sigma_j_dj = rng.normal();
        m.var_di = 1.0 + rng.uniform();
        m.var_dj = 1.0 + rng.uniform();
        CHECK(info_flow(m) == 0.0);
        CHECK(info_flow(m.swapped()) == 0.0);
    }
}

TEST_CASE("flow rejects perfectly correlated series") {
    MomentSet m;
    m.sigma_ii = 1.0;
    m.sigma_jj = 4.0;
    m.sigma_ij = 2.0;  // corr = 1
    m.var_di = m.var_dj = 1.0;
    CHECK_THROWS_AS(info_flow(m), NumericalError);
}

TEST_CASE("DGP(1) moments put the dominant flow from X2 to X1") {
    DgpSpec dgp = dgp_catalog(1);  // a12 = 0.5: X2 drives X1
    MomentSet m = analytic_moments(dgp);
    double t_2_to_1 = info_flow(m);
    double t_1_to_2 = info_flow(m.swapped());
    CHECK(t_2_to_1 > 0.0);
    CHECK(std::fabs(t_1_to_2) < 1e-14);  // a21 = 0 and rho_u = 0

    // sign agreement with the FEVD net-flow ranking at rho_u = 0
    Eigen::Matrix2d shares =
        fevd_from({dgp.a}, build_b(0.0, Attribution::b12_zero), 10).at_horizon(10);
    double net_fevd = shares(0, 1) - shares(1, 0);  // X2->X1 minus X1->X2
    CHECK(net_fevd > 0.0);
    CHECK((t_2_to_1 - t_1_to_2) * net_fevd > 0.0);
}

TEST_CASE("normalized flow is zero when the raw flow is zero") {
    MomentSet m;
    m.sigma_ii = 1.3;
    m.sigma_jj = 0.8;
    m.sigma_ij = 0.0;
    m.sigma_i_di = -0.4;
    m.sigma_j_di = 0.1;
    m.sigma_i_dj = 0.05;
    m.sigma_j_dj = -0.2;
    m.var_di = 1.1;
    m.var_dj = 0.9;
    IfResult r = normalized_info_flow(m, aux_estimates(m));
    CHECK(r.t_j_to_i == 0.0);
    CHECK(r.tau_j_to_i == 0.0);
}

TEST_CASE("dominant noise crushes the normalized flow") {
    // weak coupling, strong innovations: |tau| must be well below 1
    DgpSpec dgp;
    dgp.a << 0.05, 0.01, 0.01, 0.05;
    MomentSet m = analytic_moments(dgp);
    IfResult r = normalized_info_flow(m, aux_estimates(m));
    CHECK(std::fabs(r.tau_i_to_j) < 0.05);
    CHECK(std::fabs(r.tau_j_to_i) < 0.05);
}

TEST_CASE("positive rescaling preserves flow signs") {
    Rng rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        // random stationary system so the moments are internally consistent
        DgpSpec dgp;
        dgp.a << 0.8 * (rng.uniform() - 0.5), 0.8 * (rng.uniform() - 0.5),
            0.8 * (rng.uniform() - 0.5), 0.8 * (rng.uniform() - 0.5);
        dgp.rho_u = 1.8 * (rng.uniform() - 0.5);
        MomentSet m;
        try {
            m = analytic_moments(dgp);
        } catch (const NumericalError&) {
            continue;
        }
        IfResult base = normalized_info_flow(m, aux_estimates(m));

        double alpha = 0.1 + 5.0 * rng.uniform();  // scale series i
        MomentSet scaled = m;
        scaled.sigma_ii *= alpha * alpha;
        scaled.sigma_ij *= alpha;
        scaled.sigma_i_di *= alpha * alpha;
        scaled.sigma_j_di *= alpha;
        scaled.sigma_i_dj *= alpha;
        scaled.var_di *= alpha * alpha;
        IfResult out = normalized_info_flow(scaled, aux_estimates(scaled));

        auto same_sign = [](double a, double b) {
            return (a == 0.0 && b == 0.0) || a * b > 0.0;
        };
        CHECK(same_sign(base.t_j_to_i, out.t_j_to_i));
        CHECK(same_sign(base.t_i_to_j, out.t_i_to_j));
        CHECK(same_sign(base.tau_j_to_i, out.tau_j_to_i));
        CHECK(same_sign(base.tau_i_to_j, out.tau_i_to_j));
    }
}

TEST_CASE("normalized magnitudes stay within unity") {
    Rng rng(23);
    for (int rep = 0; rep < 200; ++rep) {
        DgpSpec dgp;
        dgp.a << 0.9 * (rng.uniform() - 0.5), 0.9 * (rng.uniform() - 0.5),
            0.9 * (rng.uniform() - 0.5), 0.9 * (rng.uniform() - 0.5);
        dgp.rho_u = 1.9 * (rng.uniform() - 0.5);
        MomentSet m;
        try {
            m = analytic_moments(dgp);
        } catch (const NumericalError&) {
            continue;
        }
        IfResult r = normalized_info_flow(m, aux_estimates(m));
        CHECK(std::fabs(r.tau_i_to_j) <= 1.0);
        CHECK(std::fabs(r.tau_j_to_i) <= 1.0);
    }
}
