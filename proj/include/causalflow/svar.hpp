#ifndef CAUSALFLOW_SVAR_HPP
#define CAUSALFLOW_SVAR_HPP

#include <array>
#include <vector>

#include "causalflow/var.hpp"

namespace causalflow {

/// Causal ordering: order[0] may move order[1] within the year, not vice versa.
struct Ordering {
    std::array<int, 2> order{0, 1};

    static Ordering first(int variable) {
        return variable == 0 ? Ordering{{0, 1}} : Ordering{{1, 0}};
    }
    void validate() const;
    Eigen::Matrix2d permutation() const;  // P with (P v)[k] = v[order[k]]
};

/// Lower-triangular Choleski factor of the ordered covariance.
struct StructuralFactor {
    Eigen::Matrix2d b_ordered = Eigen::Matrix2d::Identity();
    Ordering ordering;

    // Impact matrix in the original variable basis: column s is the
    // one-standard-deviation impact of variable s's structural shock.
    Eigen::Matrix2d impact() const;
};

/// theta[h](r, s): response of variable r at horizon h to a one-sd shock of s.
struct IrfResult {
    std::vector<Eigen::Matrix2d> theta;  // h = 0..H

    int horizon() const { return static_cast<int>(theta.size()) - 1; }
};

/// shares[h-1](r, s): fraction of variable r's h-step MSPE due to shock s.
struct FevdResult {
    std::vector<Eigen::Matrix2d> shares;  // h = 1..H

    const Eigen::Matrix2d& at_horizon(int h) const;
};

StructuralFactor cholesky_identify(const Eigen::Matrix2d& sigma_u, const Ordering& ordering);

// Structural moving-average coefficients via companion powers.
IrfResult irf(const VarFit& fit, const StructuralFactor& factor, int horizon);

// IRFs of an arbitrary lag polynomial and impact matrix (used by the
// simulation engine and the posterior-draw machinery).
IrfResult irf_from(const std::vector<Eigen::Matrix2d>& phi, const Eigen::Matrix2d& impact,
                   int horizon);

// Cumulative decomposition: share at h sums squared responses over 0..h-1.
FevdResult fevd(const VarFit& fit, const StructuralFactor& factor, int horizon);
FevdResult fevd_from(const std::vector<Eigen::Matrix2d>& phi, const Eigen::Matrix2d& impact,
                     int horizon);

}  // namespace causalflow

#endif
