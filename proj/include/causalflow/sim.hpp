#ifndef CAUSALFLOW_SIM_HPP
#define CAUSALFLOW_SIM_HPP

#include <string>
#include <vector>

#include "causalflow/liang.hpp"
#include "causalflow/series.hpp"

namespace causalflow {

/// Which structural impact entry carries the residual correlation.
enum class Attribution { b12_zero, b21_zero };

enum class Region { blue, green, white };

std::string to_string(Attribution a);
std::string to_string(Region r);

/// Bivariate VAR(1) ground truth with unit residual variances and
/// off-diagonal correlation rho_u attributed to one impact entry.
struct DgpSpec {
    Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    double rho_u = 0.0;
    Attribution attribution = Attribution::b12_zero;

    Eigen::Matrix2d sigma_u() const;  // [[1, rho], [rho, 1]]
    Eigen::Matrix2d b() const;
};

// The four catalog processes (index 1..4).
DgpSpec dgp_catalog(int index);

// Impact matrix with b(i,j) = 0 and the correlation attributed to b(j,i).
Eigen::Matrix2d build_b(double rho_u, Attribution attribution);

// Exact population moments of levels and 1-differences via the Lyapunov
// equation: sigma_{i,di} = Gamma1[i,i] - Gamma0[i,i], etc.
MomentSet analytic_moments(const DgpSpec& dgp);

struct SweepPoint {
    double rho = 0;
    double tau_12 = 0, tau_21 = 0;            // normalized flows X1->X2, X2->X1
    double fevd12_ord1 = 0, fevd21_ord1 = 0;  // shares under attribution b12_zero
    double fevd12_ord2 = 0, fevd21_ord2 = 0;  // shares under attribution b21_zero
    Region region = Region::white;
};

struct SweepResult {
    int dgp_index = 0;  // 0 for custom systems
    int horizon = 0;
    std::vector<SweepPoint> points;
};

// Region from the two attributions' share rankings; exact ties are white.
Region classify(double f12_ord1, double f21_ord1, double f12_ord2, double f21_ord2);

// Population sweep over the correlation grid at FEVD horizon h. The flows
// are attribution-invariant and computed once per grid point.
SweepResult sweep(const Eigen::Matrix2d& a, const Eigen::Vector2d& c,
                  const std::vector<double>& rho_grid, int horizon);

std::vector<double> default_rho_grid();  // -0.99..0.99 step 0.01

// Seeded sample path with a 1,000-step burn-in; years start at 1.
PairedSample simulate_path(const DgpSpec& dgp, int n, uint64_t seed);

}  // namespace causalflow

#endif
