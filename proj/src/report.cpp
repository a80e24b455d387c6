#include "causalflow/report.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "causalflow/csv.hpp"
#include "causalflow/errors.hpp"

namespace causalflow {

using nlohmann::json;

const TimeSeries& Dataset::forcing(const std::string& id) const {
    for (const auto& [fid, series] : forcings) {
        if (fid == id) return series;
    }
    throw DataError("dataset: unknown series id '" + id + "'");
}

std::string Dataset::label(const std::string& id) const {
    for (const auto& [lid, label] : labels) {
        if (lid == id) return label;
    }
    return id;
}

Dataset load_dataset(const std::string& data_dir) {
    std::ifstream in(data_dir + "/manifest.json");
    if (!in) throw DataError("dataset: cannot open " + data_dir + "/manifest.json");
    json manifest = json::parse(in);

    CsvSchema schema;
    schema.year_column = "year";
    schema.value_column = "value";

    auto load_entry = [&](const json& entry) -> TimeSeries {
        std::string id = entry.at("id");
        std::string units = entry.value("units", "");
        if (entry.contains("derive")) {
            const json& derive = entry.at("derive");
            std::string transform = derive.at("transform");
            if (transform != "ppm_to_rf")
                throw DataError("dataset: unknown transform '" + transform + "'");
            auto base = load_csv(data_dir + "/" + derive.at("from").get<std::string>(), schema,
                                 id, "ppm");
            return ppm_to_rf(base.series, derive.at("base_year").get<int>());
        }
        auto loaded = load_csv(data_dir + "/" + entry.at("file").get<std::string>(), schema,
                               id, units);
        return loaded.series;
    };

    Dataset ds;
    ds.gmta = load_entry(manifest.at("gmta"));
    ds.labels.emplace_back("gmta", manifest.at("gmta").value("label", "GMTA"));
    for (const json& entry : manifest.at("forcings")) {
        std::string id = entry.at("id");
        ds.forcings.emplace_back(id, load_entry(entry));
        ds.labels.emplace_back(id, entry.value("label", id));
    }
    return ds;
}

namespace {

PairAnalysis::FitRow fit_row(const PairedSample& pair, int p, int horizon) {
    VarSpec spec;
    spec.p = p;
    VarFit fit = fit_ols(pair, spec);
    PairAnalysis::FitRow row;
    row.p = p;
    row.corr_test = residual_corr_test(fit);
    Eigen::Matrix2d sh_i =
        fevd(fit, cholesky_identify(fit.sigma_u, Ordering::first(0)), horizon).at_horizon(horizon);
    Eigen::Matrix2d sh_g =
        fevd(fit, cholesky_identify(fit.sigma_u, Ordering::first(1)), horizon).at_horizon(horizon);
    row.share_ig_i_first = sh_i(1, 0);
    row.share_gi_i_first = sh_i(0, 1);
    row.share_ig_g_first = sh_g(1, 0);
    row.share_gi_g_first = sh_g(0, 1);
    return row;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::ArrayXd ac = a.array() - a.mean();
    Eigen::ArrayXd bc = b.array() - b.mean();
    return (ac * bc).sum() / std::sqrt(ac.square().sum() * bc.square().sum());
}

std::string stars_text(int stars) { return std::string(static_cast<size_t>(stars), '*'); }

json fit_row_json(const PairAnalysis::FitRow& row) {
    return json{{"lags", row.p},
                {"rho_u", row.corr_test.rho_u},
                {"t_stat", row.corr_test.t_stat},
                {"p_value", row.corr_test.p_value},
                {"stars", stars_text(row.corr_test.stars)},
                {"fevd_i_to_gmta_i_first", row.share_ig_i_first},
                {"fevd_gmta_to_i_i_first", row.share_gi_i_first},
                {"fevd_i_to_gmta_gmta_first", row.share_ig_g_first},
                {"fevd_gmta_to_i_gmta_first", row.share_gi_g_first},
                {"fevd_max_i_first",
                 row.share_ig_i_first >= row.share_gi_i_first ? "i_to_gmta" : "gmta_to_i"},
                {"fevd_max_gmta_first",
                 row.share_ig_g_first >= row.share_gi_g_first ? "i_to_gmta" : "gmta_to_i"}};
}

}  // namespace

PairAnalysis analyze_pair(const std::string& id, const std::string& label,
                          const PairedSample& pair, const AnalyzeOptions& opt) {
    PairAnalysis out;
    out.id = id;
    out.label = label;
    out.start_year = pair.years().front();
    out.end_year = pair.years().back();
    out.n = pair.size();
    out.fevd_horizon = opt.fevd_horizon;
    out.correlation = pearson(pair.x.values, pair.y.values);
    out.flows = info_flow_pair(pair, opt.k_diff);

    int p_sel;
    if (opt.fixed_p) {
        p_sel = *opt.fixed_p;
        if (p_sel < 1) throw ValidationError("analyze: fixed lag order must be >= 1");
    } else {
        BicChoice choice = select_lags_bic(pair, opt.p_max);
        p_sel = choice.p;
        out.bic_criteria = choice.criteria;
    }
    out.selected = fit_row(pair, p_sel, opt.fevd_horizon);
    out.p1 = fit_row(pair, 1, opt.fevd_horizon);
    return out;
}

std::string table_csv(const std::vector<PairAnalysis>& rows, const std::string& config_json) {
    std::ostringstream os;
    os << "# config: " << config_json << "\n";
    os << "pair,label,fit,start_year,end_year,n,correlation,"
          "nif_i_to_gmta,nif_gmta_to_i,if100_i_to_gmta,if100_gmta_to_i,"
          "lags,rho_u,stars,fevd_h,"
          "fevd_i_to_gmta_i_first,fevd_gmta_to_i_i_first,"
          "fevd_i_to_gmta_gmta_first,fevd_gmta_to_i_gmta_first\n";
    auto emit = [&](const PairAnalysis& r, const PairAnalysis::FitRow& f, const char* tag) {
        os << r.id << ',' << csv::escape_field(r.label) << ',' << tag << ','
           << r.start_year << ',' << r.end_year << ',' << r.n << ','
           << csv::format_double(r.correlation) << ','
           << csv::format_double(100.0 * r.flows.tau_i_to_j) << ','
           << csv::format_double(100.0 * r.flows.tau_j_to_i) << ','
           << csv::format_double(100.0 * r.flows.t_i_to_j) << ','
           << csv::format_double(100.0 * r.flows.t_j_to_i) << ','
           << f.p << ',' << csv::format_double(f.corr_test.rho_u) << ','
           << stars_text(f.corr_test.stars) << ',' << r.fevd_horizon << ','
           << csv::format_double(100.0 * f.share_ig_i_first) << ','
           << csv::format_double(100.0 * f.share_gi_i_first) << ','
           << csv::format_double(100.0 * f.share_ig_g_first) << ','
           << csv::format_double(100.0 * f.share_gi_g_first) << "\n";
    };
    for (const auto& r : rows) {
        emit(r, r.selected, "selected");
        emit(r, r.p1, "p1");
    }
    return os.str();
}

std::string table_json(const std::vector<PairAnalysis>& rows, const std::string& config_json) {
    json out;
    out["config"] = json::parse(config_json);
    out["rows"] = json::array();
    for (const auto& r : rows) {
        json row{{"pair", r.id},
                 {"label", r.label},
                 {"start_year", r.start_year},
                 {"end_year", r.end_year},
                 {"n", r.n},
                 {"correlation", r.correlation},
                 {"nif_i_to_gmta", 100.0 * r.flows.tau_i_to_j},
                 {"nif_gmta_to_i", 100.0 * r.flows.tau_j_to_i},
                 {"if100_i_to_gmta", 100.0 * r.flows.t_i_to_j},
                 {"if100_gmta_to_i", 100.0 * r.flows.t_j_to_i},
                 {"nif_max",
                  std::fabs(r.flows.tau_i_to_j) >= std::fabs(r.flows.tau_j_to_i)
                      ? "i_to_gmta" : "gmta_to_i"},
                 {"fevd_horizon", r.fevd_horizon},
                 {"selected", fit_row_json(r.selected)},
                 {"p1", fit_row_json(r.p1)}};
        if (!r.bic_criteria.empty()) row["bic"] = r.bic_criteria;
        out["rows"].push_back(std::move(row));
    }
    return out.dump(2) + "\n";
}

std::string fevd_tidy_csv(const std::vector<FevdExport>& entries, const std::string& config_json) {
    std::ostringstream os;
    os << "# config: " << config_json << "\n";
    os << "pair,lags,ordering,target,shock,horizon,share\n";
    const char* var_name[2] = {"i", "gmta"};
    for (const auto& e : entries) {
        for (size_t h = 1; h <= e.fevd.shares.size(); ++h) {
            const Eigen::Matrix2d& sh = e.fevd.shares[h - 1];
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s)
                    os << e.pair_id << ',' << e.p << ',' << e.ordering << ',' << var_name[r]
                       << ',' << var_name[s] << ',' << h << ',' << csv::format_double(sh(r, s))
                       << "\n";
        }
    }
    return os.str();
}

std::string sweep_csv(const SweepResult& result, const std::string& config_json) {
    std::ostringstream os;
    os << "# config: " << config_json << "\n";
    os << "dgp,rho,tau_12,tau_21,fevd12_ord1,fevd21_ord1,fevd12_ord2,fevd21_ord2,region\n";
    for (const auto& pt : result.points) {
        os << result.dgp_index << ',' << csv::format_double(pt.rho) << ','
           << csv::format_double(pt.tau_12) << ',' << csv::format_double(pt.tau_21) << ','
           << csv::format_double(pt.fevd12_ord1) << ',' << csv::format_double(pt.fevd21_ord1)
           << ',' << csv::format_double(pt.fevd12_ord2) << ','
           << csv::format_double(pt.fevd21_ord2) << ',' << to_string(pt.region) << "\n";
    }
    return os.str();
}

std::string region_summary_json(const std::vector<SweepResult>& sweeps,
                                const std::string& config_json) {
    json out;
    out["config"] = json::parse(config_json);
    out["dgps"] = json::array();
    for (const auto& s : sweeps) {
        int blue = 0, green = 0, white = 0;
        for (const auto& pt : s.points) {
            if (pt.region == Region::blue) ++blue;
            else if (pt.region == Region::green) ++green;
            else ++white;
        }
        double n = static_cast<double>(s.points.size());
        out["dgps"].push_back(json{{"dgp", s.dgp_index},
                                   {"horizon", s.horizon},
                                   {"grid_points", s.points.size()},
                                   {"fraction_blue", blue / n},
                                   {"fraction_green", green / n},
                                   {"fraction_white", white / n}});
    }
    return out.dump(2) + "\n";
}

std::string irf_bands_csv(const IrfBands& bands, const std::string& x_label,
                          const std::string& y_label, const std::string& config_json) {
    std::ostringstream os;
    os << "# config: " << config_json << "\n";
    os << "target,shock,horizon,q_lo,q_med,q_hi\n";
    const std::string name[2] = {x_label, y_label};
    for (size_t h = 0; h < bands.med.size(); ++h) {
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s)
                os << name[r] << ',' << name[s] << ',' << h << ','
                   << csv::format_double(bands.lo[h](r, s)) << ','
                   << csv::format_double(bands.med[h](r, s)) << ','
                   << csv::format_double(bands.hi[h](r, s)) << "\n";
    }
    return os.str();
}

namespace {

json tcr_json_entry(const TcrEstimate& e) {
    return json{{"horizon", e.horizon},
                {"ordering", e.ordering.order[0] == 0 ? "co2_first" : "gmta_first"},
                {"trend", e.trend},
                {"tcr_median_degC", e.median},
                {"tcr_lo68_degC", e.lo68},
                {"tcr_hi68_degC", e.hi68},
                {"draws", e.n_draws},
                {"discarded_draws", e.n_discarded},
                {"unreliable", e.unreliable},
                {"low_precision", e.low_precision}};
}

}  // namespace

std::string tcr_table_csv(const std::vector<TcrEstimate>& estimates,
                          const std::string& config_json) {
    std::ostringstream os;
    os << "# config: " << config_json << "\n";
    os << "ordering,trend,horizon,tcr_median_degC,tcr_lo68_degC,tcr_hi68_degC,draws,"
          "discarded,unreliable,low_precision\n";
    for (const auto& e : estimates) {
        os << (e.ordering.order[0] == 0 ? "co2_first" : "gmta_first") << ','
           << (e.trend ? "trend" : "no_trend") << ',' << e.horizon << ','
           << csv::format_double(e.median) << ',' << csv::format_double(e.lo68) << ','
           << csv::format_double(e.hi68) << ',' << e.n_draws << ',' << e.n_discarded << ','
           << (e.unreliable ? 1 : 0) << ',' << (e.low_precision ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string tcr_table_json(const std::vector<TcrEstimate>& estimates,
                           const std::string& config_json) {
    json out;
    out["config"] = json::parse(config_json);
    out["estimates"] = json::array();
    for (const auto& e : estimates) out["estimates"].push_back(tcr_json_entry(e));
    return out.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << content;
}

}  // namespace causalflow
