#ifndef CAUSALFLOW_TCR_HPP
#define CAUSALFLOW_TCR_HPP

#include "causalflow/bayes.hpp"
#include "causalflow/svar.hpp"

namespace causalflow {

// Forcing generated by a doubling of CO2: 5.35 * ln(2) W/m^2.
inline constexpr double kDoublingForcing = 3.7085681211970455;

/// Running sum of IRF entries from s = 0 to h inclusive.
double cumulative_response(const IrfResult& irf, int target, int shock, int h);

enum class TcrMode { per_draw, median_irf };

struct TcrEstimate {
    int horizon = 0;
    Ordering ordering;
    bool trend = false;
    double median = 0;      // degrees C
    double lo68 = 0, hi68 = 0;
    int n_draws = 0;
    int n_discarded = 0;    // draws with a vanishing cumulative forcing response
    bool unreliable = false;     // > 10% of draws discarded
    bool low_precision = false;  // < 1,000 draws
};

// Transient climate response at horizon h from a posterior over a
// (RF_CO2, GMTA) system: variable 0 must be the forcing, variable 1 the
// temperature. TCR = Xi_GMTA * doubling_forcing / Xi_RF per draw (default) or
// on the pointwise-median IRF. doubling_forcing must be stated in the units
// of the forcing series (5.35 ln 2 for W/m^2).
TcrEstimate tcr_at(const PosteriorDraws& draws, const Ordering& ordering, int h,
                   TcrMode mode = TcrMode::per_draw,
                   double doubling_forcing = kDoublingForcing);

}  // namespace causalflow

#endif
