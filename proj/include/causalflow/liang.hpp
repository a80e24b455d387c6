#ifndef CAUSALFLOW_LIANG_HPP
#define CAUSALFLOW_LIANG_HPP

#include "causalflow/series.hpp"

namespace causalflow {

/// Empirical moments feeding the information-flow formula. Roles: i is the
/// pair's x series, j its y series; d-prefixed entries involve the forward
/// k-difference. Population normalization (divide by n) throughout.
struct MomentSet {
    double sigma_ii = 0, sigma_jj = 0, sigma_ij = 0;
    double sigma_i_di = 0, sigma_j_di = 0;  // cov with the difference of i
    double sigma_i_dj = 0, sigma_j_dj = 0;  // cov with the difference of j
    double var_di = 0, var_dj = 0;
    long n = 0;  // effective sample size (0 for population moments)

    void validate() const;
    MomentSet swapped() const;  // exchange the i/j roles
};

/// Auxiliary single-equation estimates used by the normalizer: the
/// self-dynamics coefficient of the target equation and its noise rate.
struct FlowAux {
    double self_rate_i = 0;   // coefficient of X_i in the regression of dX_i on (X_i, X_j)
    double noise_rate_i = 0;  // residual variance of that regression / (2 sigma_ii)
    double self_rate_j = 0;
    double noise_rate_j = 0;
};

struct IfResult {
    double t_j_to_i = 0, t_i_to_j = 0;      // raw flows, nats/year
    double tau_j_to_i = 0, tau_i_to_j = 0;  // normalized, dimensionless
    int k = 1;
};

// Sample moments of levels and k-differences over their common support.
MomentSet sample_moments(const PairedSample& pair, int k = 1);

// T_{j->i} of the bivariate empirical flow formula; swap the MomentSet roles
// for the reverse direction.
double info_flow(const MomentSet& m);

FlowAux aux_estimates(const MomentSet& m);

// tau = T / Z with Z = |T| + |self rate| + |noise rate| per direction.
IfResult normalized_info_flow(const MomentSet& m, const FlowAux& aux, int k = 1);

// Convenience wrapper: moments + aux + both directions.
IfResult info_flow_pair(const PairedSample& pair, int k = 1);

}  // namespace causalflow

#endif
