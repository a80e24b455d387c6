#include "causalflow/sim.hpp"

#include <cmath>

#include "causalflow/errors.hpp"
#include "causalflow/rng.hpp"
#include "causalflow/svar.hpp"
#include "causalflow/var.hpp"

namespace causalflow {

std::string to_string(Attribution a) {
    return a == Attribution::b12_zero ? "b12_zero" : "b21_zero";
}

std::string to_string(Region r) {
    switch (r) {
        case Region::blue: return "blue";
        case Region::green: return "green";
        default: return "white";
    }
}

Eigen::Matrix2d DgpSpec::sigma_u() const {
    Eigen::Matrix2d s;
    s << 1.0, rho_u, rho_u, 1.0;
    return s;
}

Eigen::Matrix2d DgpSpec::b() const { return build_b(rho_u, attribution); }

DgpSpec dgp_catalog(int index) {
    DgpSpec d;
    switch (index) {
        case 1:
            d.a << 0.5, 0.5, 0.0, 0.6;
            d.c << 0.1, 0.7;
            break;
        case 2:
            d.a << -0.5, 0.9, -0.2, 0.5;
            break;
        case 3:
            d.a << 0.5, -0.2, -0.5, 0.25;
            break;
        case 4:
            d.a << 0.25, -0.1, -0.2, 0.1;
            break;
        default:
            throw ValidationError("dgp_catalog: index must be 1..4");
    }
    return d;
}

Eigen::Matrix2d build_b(double rho_u, Attribution attribution) {
    if (!(std::fabs(rho_u) < 1.0)) throw ValidationError("build_b: |rho_u| must be < 1");
    double root = std::sqrt(1.0 - rho_u * rho_u);
    Eigen::Matrix2d b;
    if (attribution == Attribution::b12_zero) {
        b << 1.0, 0.0, rho_u, root;
    } else {
        b << root, rho_u, 0.0, 1.0;
    }
    return b;
}

MomentSet analytic_moments(const DgpSpec& dgp) {
    auto [g0, g1] = stationary_autocov(dgp.a, dgp.sigma_u());
    MomentSet m;
    m.sigma_ii = g0(0, 0);
    m.sigma_jj = g0(1, 1);
    m.sigma_ij = g0(0, 1);
    m.sigma_i_di = g1(0, 0) - g0(0, 0);
    m.sigma_j_di = g1(0, 1) - g0(0, 1);
    m.sigma_i_dj = g1(1, 0) - g0(1, 0);
    m.sigma_j_dj = g1(1, 1) - g0(1, 1);
    m.var_di = 2.0 * (g0(0, 0) - g1(0, 0));
    m.var_dj = 2.0 * (g0(1, 1) - g1(1, 1));
    m.n = 0;
    m.validate();
    return m;
}

Region classify(double f12_ord1, double f21_ord1, double f12_ord2, double f21_ord2) {
    constexpr double kTie = 1e-12;
    double d1 = f12_ord1 - f21_ord1;
    double d2 = f12_ord2 - f21_ord2;
    if (d1 > kTie && d2 > kTie) return Region::blue;
    if (d1 < -kTie && d2 < -kTie) return Region::green;
    return Region::white;
}

SweepResult sweep(const Eigen::Matrix2d& a, const Eigen::Vector2d& c,
                  const std::vector<double>& rho_grid, int horizon) {
    if (horizon < 1) throw ValidationError("sweep: horizon must be >= 1");
    SweepResult out;
    out.horizon = horizon;
    out.points.reserve(rho_grid.size());
    std::vector<Eigen::Matrix2d> phi{a};
    for (double rho : rho_grid) {
        DgpSpec d;
        d.a = a;
        d.c = c;
        d.rho_u = rho;

        SweepPoint pt;
        pt.rho = rho;

        // flows depend only on Sigma_u, not on the attribution
        MomentSet m = analytic_moments(d);
        IfResult flows = normalized_info_flow(m, aux_estimates(m));
        pt.tau_12 = flows.tau_i_to_j;  // X1 -> X2
        pt.tau_21 = flows.tau_j_to_i;

        Eigen::Matrix2d shares1 =
            fevd_from(phi, build_b(rho, Attribution::b12_zero), horizon).at_horizon(horizon);
        Eigen::Matrix2d shares2 =
            fevd_from(phi, build_b(rho, Attribution::b21_zero), horizon).at_horizon(horizon);
        pt.fevd12_ord1 = shares1(1, 0);
        pt.fevd21_ord1 = shares1(0, 1);
        pt.fevd12_ord2 = shares2(1, 0);
        pt.fevd21_ord2 = shares2(0, 1);
        pt.region = classify(pt.fevd12_ord1, pt.fevd21_ord1, pt.fevd12_ord2, pt.fevd21_ord2);
        out.points.push_back(pt);
    }
    return out;
}

std::vector<double> default_rho_grid() {
    std::vector<double> grid;
    grid.reserve(199);
    for (int i = -99; i <= 99; ++i) grid.push_back(i * 0.01);
    return grid;
}

PairedSample simulate_path(const DgpSpec& dgp, int n, uint64_t seed) {
    if (n < 10) throw ValidationError("simulate_path: need n >= 10");
    constexpr int kBurnIn = 1000;
    Eigen::Matrix2d b = dgp.b();
    Rng rng(seed);

    Eigen::Vector2d state = Eigen::Vector2d::Zero();
    Eigen::MatrixXd path(n, 2);
    for (int t = 0; t < kBurnIn + n; ++t) {
        Eigen::Vector2d eps(rng.normal(), rng.normal());
        state = dgp.c + dgp.a * state + b * eps;
        if (!state.allFinite()) throw NumericalError("simulate_path: state overflow");
        if (t >= kBurnIn) path.row(t - kBurnIn) = state.transpose();
    }

    PairedSample pair;
    pair.x.name = "X1";
    pair.y.name = "X2";
    pair.x.values = path.col(0);
    pair.y.values = path.col(1);
    pair.x.years.resize(n);
    pair.y.years.resize(n);
    for (int t = 0; t < n; ++t) {
        pair.x.years[t] = t + 1;
        pair.y.years[t] = t + 1;
    }
    pair.validate();
    return pair;
}

}  // namespace causalflow
