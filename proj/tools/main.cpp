// causalflow CLI: ingest, analyze, simulate, irf, tcr.
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <json.hpp>

#include "causalflow/csv.hpp"
#include "causalflow/errors.hpp"
#include "causalflow/report.hpp"

namespace cf = causalflow;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string default_data_dir() {
    if (const char* env = std::getenv("CAUSALFLOW_DATA")) return env;
    return "data";
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw cf::DataError("cannot create output directory " + path);
}

cf::Ordering parse_ordering(const std::string& name) {
    if (name == "i_first" || name == "co2_first") return cf::Ordering::first(0);
    if (name == "gmta_first") return cf::Ordering::first(1);
    throw cf::ValidationError("unknown ordering '" + name + "'");
}

struct IngestArgs {
    std::string input, output, year_col = "year", value_col = "value", name;
    std::string delimiter = ",";
};

int run_ingest(const IngestArgs& a) {
    cf::CsvSchema schema;
    schema.year_column = a.year_col;
    schema.value_column = a.value_col;
    if (a.delimiter.size() != 1) throw cf::ValidationError("delimiter must be one character");
    schema.delimiter = a.delimiter[0];
    auto loaded = cf::load_csv(a.input, schema, a.name.empty() ? a.input : a.name);
    if (loaded.dropped_rows > 0)
        std::cerr << "warning: dropped " << loaded.dropped_rows << " rows with missing values\n";

    json config{{"command", "ingest"}, {"input", a.input}, {"year_column", a.year_col},
                {"value_column", a.value_col}, {"dropped_rows", loaded.dropped_rows}};
    std::ostringstream os;
    os << "# config: " << config.dump() << "\nyear,value\n";
    for (Eigen::Index i = 0; i < loaded.series.size(); ++i)
        os << loaded.series.years[static_cast<size_t>(i)] << ','
           << cf::csv::format_double(loaded.series.values[i]) << "\n";
    cf::write_text_file(a.output, os.str());
    std::cout << "wrote " << a.output << " (" << loaded.series.size() << " rows)\n";
    return 0;
}

struct AnalyzeArgs {
    std::string data_dir = default_data_dir();
    std::string out_dir = "out";
    std::string pairs;  // comma-separated ids, empty = all
    std::string format = "both";
    int start = 1850, end = 2005, p_max = 8, horizon = 15, fixed_p = 0, threads = 1;
};

int run_analyze(const AnalyzeArgs& a) {
    cf::Dataset ds = cf::load_dataset(a.data_dir);
    cf::AnalyzeOptions opt;
    opt.start_year = a.start;
    opt.end_year = a.end;
    opt.p_max = a.p_max;
    opt.fevd_horizon = a.horizon;
    if (a.fixed_p > 0) opt.fixed_p = a.fixed_p;

    std::vector<std::string> ids;
    if (a.pairs.empty()) {
        for (const auto& [id, s] : ds.forcings) ids.push_back(id);
    } else {
        std::stringstream ss(a.pairs);
        std::string tok;
        while (std::getline(ss, tok, ',')) ids.push_back(tok);
    }

    json config{{"command", "analyze"}, {"data_dir", a.data_dir}, {"start_year", a.start},
                {"end_year", a.end}, {"p_max", a.p_max}, {"fevd_horizon", a.horizon},
                {"fixed_p", a.fixed_p}, {"pairs", ids}, {"threads", a.threads}};
    std::string config_str = config.dump();

    struct Slot {
        std::optional<cf::PairAnalysis> row;
        std::vector<cf::FevdExport> exports;
        std::string error;
    };
    std::vector<Slot> slots(ids.size());

    auto work = [&](size_t idx) {
        const std::string& id = ids[idx];
        try {
            cf::PairedSample pair =
                cf::align_pair(ds.forcing(id), ds.gmta).window(a.start, a.end);
            cf::PairAnalysis analysis = cf::analyze_pair(id, ds.label(id), pair, opt);
            slots[idx].row = analysis;
            for (int p : {analysis.selected.p, analysis.p1.p}) {
                cf::VarSpec spec;
                spec.p = p;
                cf::VarFit fit = cf::fit_ols(pair, spec);
                for (int first = 0; first < 2; ++first) {
                    cf::FevdExport e;
                    e.pair_id = id;
                    e.p = p;
                    e.ordering = first == 0 ? "i_first" : "gmta_first";
                    e.fevd = cf::fevd(fit, cf::cholesky_identify(fit.sigma_u,
                                                                  cf::Ordering::first(first)),
                                      opt.fevd_horizon);
                    slots[idx].exports.push_back(std::move(e));
                }
                if (analysis.selected.p == analysis.p1.p) break;
            }
        } catch (const cf::Error& e) {
            slots[idx].error = e.what();
        }
    };

    int threads = std::max(1, a.threads);
    if (threads == 1) {
        for (size_t i = 0; i < ids.size(); ++i) work(i);
    } else {
        std::vector<std::future<void>> futures;
        std::atomic<size_t> next{0};
        for (int t = 0; t < threads; ++t)
            futures.push_back(std::async(std::launch::async, [&] {
                for (size_t i = next++; i < ids.size(); i = next++) work(i);
            }));
        for (auto& f : futures) f.get();
    }

    std::vector<cf::PairAnalysis> rows;
    std::vector<cf::FevdExport> exports;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (!slots[i].error.empty()) {
            std::cerr << "pair '" << ids[i] << "' failed: " << slots[i].error << "\n";
            continue;
        }
        rows.push_back(*slots[i].row);
        for (auto& e : slots[i].exports) exports.push_back(std::move(e));
    }
    if (rows.empty()) throw cf::DataError("analyze: every pair failed");

    ensure_dir(a.out_dir);
    if (a.format == "csv" || a.format == "both") {
        cf::write_text_file(a.out_dir + "/table1.csv", cf::table_csv(rows, config_str));
        cf::write_text_file(a.out_dir + "/fevd_tidy.csv",
                            cf::fevd_tidy_csv(exports, config_str));
    }
    if (a.format == "json" || a.format == "both")
        cf::write_text_file(a.out_dir + "/table1.json", cf::table_json(rows, config_str));
    std::cout << "analyzed " << rows.size() << " pairs -> " << a.out_dir << "\n";
    return 0;
}

struct SimulateArgs {
    std::string out_dir = "out";
    std::string dgp = "all";
    int horizon = 10;
    double rho_step = 0.01;
    std::vector<double> a_entries;  // custom DGP: a11 a12 a21 a22
    std::vector<double> c_entries;  // custom intercept
};

int run_simulate(const SimulateArgs& a) {
    if (a.horizon < 1) throw cf::ValidationError("simulate: horizon must be >= 1");
    if (!(a.rho_step > 0.0 && a.rho_step < 1.0))
        throw cf::ValidationError("simulate: rho step must be in (0, 1)");

    std::vector<double> grid;
    for (double rho = -1.0 + a.rho_step; rho < 1.0 - 0.5 * a.rho_step; rho += a.rho_step)
        grid.push_back(std::round(rho * 1e9) / 1e9);

    json config{{"command", "simulate"}, {"dgp", a.dgp}, {"horizon", a.horizon},
                {"rho_step", a.rho_step}, {"grid_points", grid.size()}};
    std::string config_str = config.dump();

    ensure_dir(a.out_dir);
    std::vector<cf::SweepResult> sweeps;
    if (!a.a_entries.empty()) {
        if (a.a_entries.size() != 4)
            throw cf::ValidationError("simulate: --a expects 4 entries (a11 a12 a21 a22)");
        Eigen::Matrix2d A;
        A << a.a_entries[0], a.a_entries[1], a.a_entries[2], a.a_entries[3];
        Eigen::Vector2d c = Eigen::Vector2d::Zero();
        if (!a.c_entries.empty()) {
            if (a.c_entries.size() != 2)
                throw cf::ValidationError("simulate: --c expects 2 entries");
            c << a.c_entries[0], a.c_entries[1];
        }
        cf::SweepResult r = cf::sweep(A, c, grid, a.horizon);
        r.dgp_index = 0;
        cf::write_text_file(a.out_dir + "/custom_h" + std::to_string(a.horizon) + ".csv",
                            cf::sweep_csv(r, config_str));
        sweeps.push_back(std::move(r));
    } else {
        std::vector<int> indices;
        if (a.dgp == "all") indices = {1, 2, 3, 4};
        else indices = {std::stoi(a.dgp)};
        for (int idx : indices) {
            cf::DgpSpec spec = cf::dgp_catalog(idx);
            cf::SweepResult r = cf::sweep(spec.a, spec.c, grid, a.horizon);
            r.dgp_index = idx;
            cf::write_text_file(a.out_dir + "/dgp" + std::to_string(idx) + "_h" +
                                    std::to_string(a.horizon) + ".csv",
                                cf::sweep_csv(r, config_str));
            sweeps.push_back(std::move(r));
        }
    }
    cf::write_text_file(a.out_dir + "/regions_h" + std::to_string(a.horizon) + ".json",
                        cf::region_summary_json(sweeps, config_str));
    std::cout << "wrote " << sweeps.size() << " sweep files -> " << a.out_dir << "\n";
    return 0;
}

struct IrfArgs {
    std::string data_dir = default_data_dir();
    std::string out_dir = "out";
    std::string pair;
    std::string ordering = "i_first";
    int start = 1850, end = 2005;
    int p = 0;  // 0 = BIC
    int p_max = 8;
    bool trend = false;
    int horizon = 20;
    int draws = 10000;
    uint64_t seed = 42;
    double band = 0.68;
};

int run_irf(const IrfArgs& a) {
    cf::Dataset ds = cf::load_dataset(a.data_dir);
    cf::PairedSample pair = cf::align_pair(ds.forcing(a.pair), ds.gmta).window(a.start, a.end);
    int p = a.p > 0 ? a.p : cf::select_lags_bic(pair, a.p_max).p;
    cf::VarSpec spec;
    spec.p = p;
    spec.trend = a.trend;
    cf::MinnesotaPrior prior =
        cf::optimize_hyperparameters(pair, spec, cf::default_lambda_grid());
    cf::PosteriorDraws draws = cf::fit_bayes(pair, spec, prior, a.draws, a.seed);
    cf::IrfBands bands = cf::posterior_irf_bands(draws, parse_ordering(a.ordering),
                                                 a.horizon, a.band);
    if (bands.low_draw_warning)
        std::cerr << "warning: fewer than 100 posterior draws; bands are unreliable\n";

    json config{{"command", "irf"}, {"data_dir", a.data_dir}, {"pair", a.pair},
                {"ordering", a.ordering}, {"start_year", a.start}, {"end_year", a.end},
                {"lags", p}, {"trend", a.trend}, {"horizon", a.horizon}, {"draws", a.draws},
                {"seed", a.seed}, {"band", a.band},
                {"lambda_overall", prior.lambda_overall}};
    ensure_dir(a.out_dir);
    std::string file = a.out_dir + "/irf_" + a.pair + "_" + a.ordering +
                       (a.trend ? "_trend" : "") + ".csv";
    cf::write_text_file(file, cf::irf_bands_csv(bands, a.pair, "gmta", config.dump()));
    std::cout << "wrote " << file << "\n";
    return 0;
}

struct TcrArgs {
    std::string data_dir = default_data_dir();
    std::string out_dir = "out";
    std::string pair = "co2_rf";
    std::string trend = "both";
    std::string mode = "per_draw";
    std::string format = "both";
    std::vector<int> horizons = {20, 70};
    int start = 1850, end = 2005;
    int p = 4;
    int draws = 10000;
    uint64_t seed = 42;
};

int run_tcr(const TcrArgs& a) {
    cf::Dataset ds = cf::load_dataset(a.data_dir);
    cf::PairedSample pair = cf::align_pair(ds.forcing(a.pair), ds.gmta).window(a.start, a.end);
    cf::TcrMode mode = a.mode == "median_irf" ? cf::TcrMode::median_irf : cf::TcrMode::per_draw;
    if (a.mode != "median_irf" && a.mode != "per_draw")
        throw cf::ValidationError("tcr: mode must be per_draw or median_irf");

    std::vector<bool> trend_variants;
    if (a.trend == "both") trend_variants = {false, true};
    else if (a.trend == "on") trend_variants = {true};
    else if (a.trend == "off") trend_variants = {false};
    else throw cf::ValidationError("tcr: trend must be both, on or off");

    json config{{"command", "tcr"}, {"data_dir", a.data_dir}, {"pair", a.pair},
                {"start_year", a.start}, {"end_year", a.end}, {"lags", a.p},
                {"draws", a.draws}, {"seed", a.seed}, {"horizons", a.horizons},
                {"trend", a.trend}, {"mode", a.mode}};
    std::string config_str = config.dump();

    std::vector<cf::TcrEstimate> estimates;
    for (bool trend : trend_variants) {
        cf::VarSpec spec;
        spec.p = a.p;
        spec.trend = trend;
        cf::MinnesotaPrior prior =
            cf::optimize_hyperparameters(pair, spec, cf::default_lambda_grid());
        cf::PosteriorDraws draws = cf::fit_bayes(pair, spec, prior, a.draws, a.seed);
        for (int first = 0; first < 2; ++first)
            for (int h : a.horizons)
                estimates.push_back(cf::tcr_at(draws, cf::Ordering::first(first), h, mode));
    }
    for (const auto& e : estimates) {
        if (e.low_precision) {
            std::cerr << "warning: TCR estimated from fewer than 1,000 draws\n";
            break;
        }
    }

    ensure_dir(a.out_dir);
    if (a.format == "csv" || a.format == "both")
        cf::write_text_file(a.out_dir + "/tcr.csv", cf::tcr_table_csv(estimates, config_str));
    if (a.format == "json" || a.format == "both")
        cf::write_text_file(a.out_dir + "/tcr.json", cf::tcr_table_json(estimates, config_str));
    std::cout << "wrote TCR table (" << estimates.size() << " entries) -> " << a.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-flow and structural-VAR causal measures for bivariate series"};
    app.require_subcommand(1);
    app.set_config("--config");

    IngestArgs ingest;
    auto* cmd_ingest = app.add_subcommand("ingest", "Validate a raw CSV and write year,value");
    cmd_ingest->add_option("--input", ingest.input)->required();
    cmd_ingest->add_option("--output", ingest.output)->required();
    cmd_ingest->add_option("--year-col", ingest.year_col);
    cmd_ingest->add_option("--value-col", ingest.value_col);
    cmd_ingest->add_option("--delimiter", ingest.delimiter);
    cmd_ingest->add_option("--name", ingest.name);

    AnalyzeArgs analyze;
    auto* cmd_analyze = app.add_subcommand("analyze", "Flow measures and FEVD per pair");
    cmd_analyze->add_option("--data-dir", analyze.data_dir);
    cmd_analyze->add_option("--out", analyze.out_dir);
    cmd_analyze->add_option("--pairs", analyze.pairs);
    cmd_analyze->add_option("--start", analyze.start);
    cmd_analyze->add_option("--end", analyze.end);
    cmd_analyze->add_option("--p-max", analyze.p_max);
    cmd_analyze->add_option("--fixed-p", analyze.fixed_p);
    cmd_analyze->add_option("--horizon", analyze.horizon);
    cmd_analyze->add_option("--threads", analyze.threads);
    cmd_analyze->add_option("--format", analyze.format)
        ->check(CLI::IsMember({"csv", "json", "both"}));

    SimulateArgs simulate;
    auto* cmd_simulate = app.add_subcommand("simulate", "Correlation sweeps for the DGP catalog");
    cmd_simulate->add_option("--out", simulate.out_dir);
    cmd_simulate->add_option("--dgp", simulate.dgp);
    cmd_simulate->add_option("--horizon", simulate.horizon);
    cmd_simulate->add_option("--rho-step", simulate.rho_step);
    cmd_simulate->add_option("--a", simulate.a_entries)->expected(4);
    cmd_simulate->add_option("--c", simulate.c_entries)->expected(2);

    IrfArgs irf;
    auto* cmd_irf = app.add_subcommand("irf", "Posterior IRF bands for one pair");
    cmd_irf->add_option("--data-dir", irf.data_dir);
    cmd_irf->add_option("--out", irf.out_dir);
    cmd_irf->add_option("--pair", irf.pair)->required();
    cmd_irf->add_option("--ordering", irf.ordering)
        ->check(CLI::IsMember({"i_first", "co2_first", "gmta_first"}));
    cmd_irf->add_option("--start", irf.start);
    cmd_irf->add_option("--end", irf.end);
    cmd_irf->add_option("--p", irf.p);
    cmd_irf->add_option("--p-max", irf.p_max);
    cmd_irf->add_flag("--trend", irf.trend);
    cmd_irf->add_option("--horizon", irf.horizon);
    cmd_irf->add_option("--draws", irf.draws);
    cmd_irf->add_option("--seed", irf.seed);
    cmd_irf->add_option("--band", irf.band);

    TcrArgs tcr;
    auto* cmd_tcr = app.add_subcommand("tcr", "Transient climate response table");
    cmd_tcr->add_option("--data-dir", tcr.data_dir);
    cmd_tcr->add_option("--out", tcr.out_dir);
    cmd_tcr->add_option("--pair", tcr.pair);
    cmd_tcr->add_option("--start", tcr.start);
    cmd_tcr->add_option("--end", tcr.end);
    cmd_tcr->add_option("--p", tcr.p);
    cmd_tcr->add_option("--draws", tcr.draws);
    cmd_tcr->add_option("--seed", tcr.seed);
    cmd_tcr->add_option("--horizons", tcr.horizons);
    cmd_tcr->add_option("--trend", tcr.trend)->check(CLI::IsMember({"both", "on", "off"}));
    cmd_tcr->add_option("--mode", tcr.mode)->check(CLI::IsMember({"per_draw", "median_irf"}));
    cmd_tcr->add_option("--format", tcr.format)->check(CLI::IsMember({"csv", "json", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_ingest->parsed()) return run_ingest(ingest);
        if (cmd_analyze->parsed()) return run_analyze(analyze);
        if (cmd_simulate->parsed()) return run_simulate(simulate);
        if (cmd_irf->parsed()) return run_irf(irf);
        if (cmd_tcr->parsed()) return run_tcr(tcr);
    } catch (const cf::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const cf::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const cf::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
