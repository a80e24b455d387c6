#include "causalflow/svar.hpp"

#include <cmath>

#include "causalflow/errors.hpp"

namespace causalflow {

void Ordering::validate() const {
    bool ok = (order[0] == 0 && order[1] == 1) || (order[0] == 1 && order[1] == 0);
    if (!ok) throw ValidationError("ordering: must be a permutation of {0, 1}");
}

Eigen::Matrix2d Ordering::permutation() const {
    validate();
    Eigen::Matrix2d p = Eigen::Matrix2d::Zero();
    p(0, order[0]) = 1.0;
    p(1, order[1]) = 1.0;
    return p;
}

Eigen::Matrix2d StructuralFactor::impact() const {
    Eigen::Matrix2d p = ordering.permutation();
    return p.transpose() * b_ordered * p;
}

StructuralFactor cholesky_identify(const Eigen::Matrix2d& sigma_u, const Ordering& ordering) {
    ordering.validate();
    Eigen::Matrix2d p = ordering.permutation();
    Eigen::Matrix2d ordered = p * sigma_u * p.transpose();
    Eigen::LLT<Eigen::Matrix2d> llt(ordered);
    if (llt.info() != Eigen::Success)
        throw NumericalError("cholesky_identify: covariance is not positive definite");
    StructuralFactor factor;
    factor.b_ordered = llt.matrixL();
    factor.ordering = ordering;
    if (!(factor.b_ordered(0, 0) > 0.0) || !(factor.b_ordered(1, 1) > 0.0))
        throw NumericalError("cholesky_identify: factor diagonal not strictly positive");
    return factor;
}

IrfResult irf_from(const std::vector<Eigen::Matrix2d>& phi, const Eigen::Matrix2d& impact,
                   int horizon) {
    if (horizon < 0) throw ValidationError("irf: horizon must be >= 0");
    int p = static_cast<int>(phi.size());
    IrfResult out;
    out.theta.reserve(horizon + 1);
    out.theta.push_back(impact);
    // psi_h = sum_{l=1..min(h,p)} phi_l * psi_{h-l}, psi_0 = I
    std::vector<Eigen::Matrix2d> psi{Eigen::Matrix2d::Identity()};
    for (int h = 1; h <= horizon; ++h) {
        Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
        for (int l = 1; l <= std::min(h, p); ++l) acc += phi[l - 1] * psi[h - l];
        psi.push_back(acc);
        if (!acc.allFinite()) throw NumericalError("irf: response overflow (explosive system)");
        out.theta.push_back(acc * impact);
    }
    return out;
}

IrfResult irf(const VarFit& fit, const StructuralFactor& factor, int horizon) {
    return irf_from(fit.phi, factor.impact(), horizon);
}

const Eigen::Matrix2d& FevdResult::at_horizon(int h) const {
    if (h < 1 || h > static_cast<int>(shares.size()))
        throw ValidationError("fevd: horizon out of range");
    return shares[h - 1];
}

FevdResult fevd_from(const std::vector<Eigen::Matrix2d>& phi, const Eigen::Matrix2d& impact,
                     int horizon) {
    if (horizon < 1) throw ValidationError("fevd: horizon must be >= 1");
    IrfResult responses = irf_from(phi, impact, horizon - 1);
    FevdResult out;
    out.shares.reserve(horizon);
    Eigen::Matrix2d num = Eigen::Matrix2d::Zero();
    Eigen::Vector2d mspe = Eigen::Vector2d::Zero();
    for (int h = 1; h <= horizon; ++h) {
        const Eigen::Matrix2d& th = responses.theta[h - 1];
        num += th.cwiseProduct(th);
        mspe += (th * th.transpose()).diagonal();
        if (!(mspe(0) > 0.0) || !(mspe(1) > 0.0))
            throw NumericalError("fevd: zero mean squared prediction error");
        Eigen::Matrix2d sh;
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) sh(r, s) = num(r, s) / mspe(r);
        out.shares.push_back(sh);
    }
    return out;
}

FevdResult fevd(const VarFit& fit, const StructuralFactor& factor, int horizon) {
    return fevd_from(fit.phi, factor.impact(), horizon);
}

}  // namespace causalflow
