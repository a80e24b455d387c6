#ifndef CAUSALFLOW_REPORT_HPP
#define CAUSALFLOW_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "causalflow/bayes.hpp"
#include "causalflow/liang.hpp"
#include "causalflow/sim.hpp"
#include "causalflow/svar.hpp"
#include "causalflow/tcr.hpp"

namespace causalflow {

/// Bundled snapshot: GMTA plus the forcing roster from data/manifest.json.
struct Dataset {
    TimeSeries gmta;
    std::vector<std::pair<std::string, TimeSeries>> forcings;  // id -> series
    std::vector<std::pair<std::string, std::string>> labels;   // id -> display label

    const TimeSeries& forcing(const std::string& id) const;
    std::string label(const std::string& id) const;
};

Dataset load_dataset(const std::string& data_dir);

struct AnalyzeOptions {
    int start_year = 1850;
    int end_year = 2005;
    int p_max = 8;
    std::optional<int> fixed_p;  // bypasses BIC when set
    int fevd_horizon = 15;
    int k_diff = 1;
};

/// One Table-1-shaped row pair: flow measures plus FEVD diagnostics at the
/// selected lag order and at P = 1.
struct PairAnalysis {
    std::string id;
    std::string label;
    int start_year = 0, end_year = 0;
    long n = 0;
    double correlation = 0;
    IfResult flows;
    std::vector<double> bic_criteria;

    struct FitRow {
        int p = 1;
        ResidualCorrTest corr_test;
        double share_ig_i_first = 0;  // i -> GMTA, ordering (i, GMTA)
        double share_gi_i_first = 0;  // GMTA -> i, ordering (i, GMTA)
        double share_ig_g_first = 0;  // i -> GMTA, ordering (GMTA, i)
        double share_gi_g_first = 0;  // GMTA -> i, ordering (GMTA, i)
    };
    FitRow selected;  // P = P* (BIC) or the fixed override
    FitRow p1;
    int fevd_horizon = 15;
};

PairAnalysis analyze_pair(const std::string& id, const std::string& label,
                          const PairedSample& pair, const AnalyzeOptions& opt);

// --- emission -------------------------------------------------------------
// Every writer prepends "# config: <json>" (CSV) or embeds a "config" field
// (JSON) so outputs are reproducible from their own header.

struct FevdExport {
    std::string pair_id;
    int p = 1;
    std::string ordering;  // "i_first" | "gmta_first"
    FevdResult fevd;
};

std::string table_csv(const std::vector<PairAnalysis>& rows, const std::string& config_json);
std::string table_json(const std::vector<PairAnalysis>& rows, const std::string& config_json);
std::string fevd_tidy_csv(const std::vector<FevdExport>& entries, const std::string& config_json);
std::string sweep_csv(const SweepResult& result, const std::string& config_json);
std::string region_summary_json(const std::vector<SweepResult>& sweeps,
                                const std::string& config_json);
std::string irf_bands_csv(const IrfBands& bands, const std::string& x_label,
                          const std::string& y_label, const std::string& config_json);
std::string tcr_table_csv(const std::vector<TcrEstimate>& estimates,
                          const std::string& config_json);
std::string tcr_table_json(const std::vector<TcrEstimate>& estimates,
                           const std::string& config_json);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace causalflow

#endif
