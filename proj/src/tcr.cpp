#include "causalflow/tcr.hpp"

#include <algorithm>
#include <cmath>

#include "causalflow/errors.hpp"
#include "causalflow/stats.hpp"

namespace causalflow {

double cumulative_response(const IrfResult& irf, int target, int shock, int h) {
    if (h < 0 || h > irf.horizon())
        throw ValidationError("cumulative_response: horizon out of range");
    if (target < 0 || target > 1 || shock < 0 || shock > 1)
        throw ValidationError("cumulative_response: variable index out of range");
    double acc = 0.0;
    for (int s = 0; s <= h; ++s) acc += irf.theta[s](target, shock);
    return acc;
}

TcrEstimate tcr_at(const PosteriorDraws& draws, const Ordering& ordering, int h, TcrMode mode,
                   double doubling_forcing) {
    if (draws.draws.empty()) throw ValidationError("tcr_at: no posterior draws");
    if (h < 0) throw ValidationError("tcr_at: horizon must be >= 0");
    constexpr int kRf = 0, kGmta = 1;
    constexpr double kTinyForcing = 1e-8;

    TcrEstimate est;
    est.horizon = h;
    est.ordering = ordering;
    est.trend = draws.spec.trend;
    est.n_draws = static_cast<int>(draws.draws.size());
    est.low_precision = est.n_draws < 1000;

    if (mode == TcrMode::median_irf) {
        IrfBands bands = posterior_irf_bands(draws, ordering, h, 0.68);
        IrfResult median_irf;
        median_irf.theta = bands.med;
        double xi_rf = cumulative_response(median_irf, kRf, kRf, h);
        if (std::fabs(xi_rf) < kTinyForcing)
            throw NumericalError("tcr_at: cumulative forcing response of the median IRF vanishes");
        double xi_gmta = cumulative_response(median_irf, kGmta, kRf, h);
        est.median = xi_gmta * doubling_forcing / xi_rf;
        est.lo68 = est.hi68 = est.median;
        return est;
    }

    std::vector<double> tcrs;
    tcrs.reserve(draws.draws.size());
    for (const auto& draw : draws.draws) {
        StructuralFactor factor = cholesky_identify(draw.sigma_u, ordering);
        IrfResult r = irf_from(draw.phi, factor.impact(), h);
        double xi_rf = cumulative_response(r, kRf, kRf, h);
        if (std::fabs(xi_rf) < kTinyForcing) {
            ++est.n_discarded;
            continue;
        }
        double xi_gmta = cumulative_response(r, kGmta, kRf, h);
        tcrs.push_back(xi_gmta * doubling_forcing / xi_rf);
    }
    if (tcrs.empty()) throw NumericalError("tcr_at: every draw had a vanishing forcing response");
    est.unreliable = est.n_discarded * 10 > est.n_draws;
    std::sort(tcrs.begin(), tcrs.end());
    est.median = stats::quantile_sorted(tcrs, 0.5);
    est.lo68 = stats::quantile_sorted(tcrs, 0.16);
    est.hi68 = stats::quantile_sorted(tcrs, 0.84);
    return est;
}

}  // namespace causalflow
