#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causalflow/bayes.hpp"
#include "causalflow/errors.hpp"
#include "causalflow/liang.hpp"
#include "causalflow/report.hpp"
#include "causalflow/series.hpp"
#include "causalflow/sim.hpp"
#include "causalflow/svar.hpp"
#include "causalflow/tcr.hpp"
#include "causalflow/var.hpp"

namespace py = pybind11;
using namespace causalflow;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Information-flow and structural-VAR causal measures";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_IOError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    // ---- series ----
    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init([](std::string name, std::vector<int> years, Eigen::VectorXd values,
                         std::string units) {
                 TimeSeries s{std::move(name), std::move(units), std::move(years),
                              std::move(values)};
                 s.validate();
                 return s;
             }),
             py::arg("name"), py::arg("years"), py::arg("values"), py::arg("units") = "")
        .def_readonly("name", &TimeSeries::name)
        .def_readonly("units", &TimeSeries::units)
        .def_readonly("years", &TimeSeries::years)
        .def_readonly("values", &TimeSeries::values)
        .def("window", &TimeSeries::window, py::arg("first"), py::arg("last"))
        .def("__len__", [](const TimeSeries& s) { return s.size(); })
        .def("__repr__", [](const TimeSeries& s) {
            return "<TimeSeries " + s.name + " " + std::to_string(s.start_year()) + "-" +
                   std::to_string(s.end_year()) + ">";
        });

    py::class_<PairedSample>(m, "PairedSample")
        .def_readonly("x", &PairedSample::x)
        .def_readonly("y", &PairedSample::y)
        .def("window", &PairedSample::window, py::arg("first"), py::arg("last"))
        .def("__len__", [](const PairedSample& p) { return p.size(); });

    py::class_<CsvSchema>(m, "CsvSchema")
        .def(py::init([](std::string year_column, std::string value_column, char delimiter,
                         double max_bad_fraction) {
                 return CsvSchema{std::move(year_column), std::move(value_column), delimiter,
                                  max_bad_fraction};
             }),
             py::arg("year_column") = "year", py::arg("value_column") = "value",
             py::arg("delimiter") = ',', py::arg("max_bad_fraction") = 0.1);

    m.def(
        "load_csv",
        [](const std::string& path, const CsvSchema& schema, const std::string& name,
           const std::string& units) {
            LoadResult r = load_csv(path, schema, name, units);
            return py::make_tuple(r.series, r.dropped_rows);
        },
        py::arg("path"), py::arg("schema") = CsvSchema{"year", "value"}, py::arg("name") = "",
        py::arg("units") = "");
    m.def("align_pair", &align_pair, py::arg("a"), py::arg("b"));
    m.def("ppm_to_rf", &ppm_to_rf, py::arg("co2_ppm"), py::arg("base_year"));
    m.def("first_difference", &first_difference, py::arg("series"), py::arg("k") = 1);

    // ---- information flow ----
    py::class_<MomentSet>(m, "MomentSet")
        .def_readonly("sigma_ii", &MomentSet::sigma_ii)
        .def_readonly("sigma_jj", &MomentSet::sigma_jj)
        .def_readonly("sigma_ij", &MomentSet::sigma_ij)
        .def_readonly("sigma_i_di", &MomentSet::sigma_i_di)
        .def_readonly("sigma_j_di", &MomentSet::sigma_j_di)
        .def_readonly("sigma_i_dj", &MomentSet::sigma_i_dj)
        .def_readonly("sigma_j_dj", &MomentSet::sigma_j_dj)
        .def_readonly("n", &MomentSet::n)
        .def("swapped", &MomentSet::swapped);

    py::class_<IfResult>(m, "IfResult")
        .def_readonly("t_j_to_i", &IfResult::t_j_to_i)
        .def_readonly("t_i_to_j", &IfResult::t_i_to_j)
        .def_readonly("tau_j_to_i", &IfResult::tau_j_to_i)
        .def_readonly("tau_i_to_j", &IfResult::tau_i_to_j)
        .def_readonly("k", &IfResult::k);

    m.def("sample_moments", &sample_moments, py::arg("pair"), py::arg("k") = 1);
    m.def("info_flow", &info_flow, py::arg("moments"));
    m.def("info_flow_pair", &info_flow_pair, py::arg("pair"), py::arg("k") = 1);

    // ---- VAR ----
    py::class_<VarSpec>(m, "VarSpec")
        .def(py::init([](int p, bool trend) {
                 VarSpec s;
                 s.p = p;
                 s.trend = trend;
                 s.validate();
                 return s;
             }),
             py::arg("p") = 1, py::arg("trend") = false)
        .def_readonly("p", &VarSpec::p)
        .def_readonly("trend", &VarSpec::trend);

    py::class_<VarFit>(m, "VarFit")
        .def_readonly("c", &VarFit::c)
        .def_readonly("phi", &VarFit::phi)
        .def_readonly("sigma_u", &VarFit::sigma_u)
        .def_readonly("residuals", &VarFit::residuals)
        .def_readonly("t_eff", &VarFit::t_eff);

    py::class_<ResidualCorrTest>(m, "ResidualCorrTest")
        .def_readonly("rho_u", &ResidualCorrTest::rho_u)
        .def_readonly("t_stat", &ResidualCorrTest::t_stat)
        .def_readonly("p_value", &ResidualCorrTest::p_value)
        .def_readonly("stars", &ResidualCorrTest::stars);

    m.def("fit_ols",
          py::overload_cast<const PairedSample&, const VarSpec&>(&fit_ols),
          py::arg("pair"), py::arg("spec"));
    m.def(
        "select_lags_bic",
        [](const PairedSample& pair, int p_max, bool trend) {
            BicChoice c = select_lags_bic(pair, p_max, trend);
            return py::make_tuple(c.p, c.criteria);
        },
        py::arg("pair"), py::arg("p_max") = 8, py::arg("trend") = false);
    m.def("residual_corr_test", &residual_corr_test, py::arg("fit"));
    m.def("stationary_autocov", &stationary_autocov, py::arg("a"), py::arg("sigma"));

    // ---- SVAR ----
    py::class_<Ordering>(m, "Ordering")
        .def_static("first", &Ordering::first, py::arg("variable"))
        .def("__repr__", [](const Ordering& o) {
            return std::string("<Ordering ") + (o.order[0] == 0 ? "x_first" : "y_first") + ">";
        });

    py::class_<StructuralFactor>(m, "StructuralFactor")
        .def_readonly("b_ordered", &StructuralFactor::b_ordered)
        .def("impact", &StructuralFactor::impact);

    py::class_<IrfResult>(m, "IrfResult")
        .def_readonly("theta", &IrfResult::theta)
        .def("horizon", &IrfResult::horizon);

    py::class_<FevdResult>(m, "FevdResult")
        .def_readonly("shares", &FevdResult::shares)
        .def("at_horizon", &FevdResult::at_horizon, py::arg("h"),
             py::return_value_policy::copy);

    m.def("cholesky_identify", &cholesky_identify, py::arg("sigma_u"), py::arg("ordering"));
    m.def("irf", &irf, py::arg("fit"), py::arg("factor"), py::arg("horizon"));
    m.def("irf_from", &irf_from, py::arg("phi"), py::arg("impact"), py::arg("horizon"));
    m.def("fevd", &fevd, py::arg("fit"), py::arg("factor"), py::arg("horizon"));
    m.def("fevd_from", &fevd_from, py::arg("phi"), py::arg("impact"), py::arg("horizon"));

    // ---- Bayesian machinery ----
    py::class_<MinnesotaPrior>(m, "MinnesotaPrior")
        .def(py::init<>())
        .def_readwrite("lambda_overall", &MinnesotaPrior::lambda_overall)
        .def_readwrite("lambda_cross", &MinnesotaPrior::lambda_cross)
        .def_readwrite("lag_decay", &MinnesotaPrior::lag_decay)
        .def_readwrite("prior_mean_own_first_lag", &MinnesotaPrior::prior_mean_own_first_lag)
        .def_readwrite("scale_anchors", &MinnesotaPrior::scale_anchors);

    py::class_<PosteriorDraw>(m, "PosteriorDraw")
        .def_readonly("c", &PosteriorDraw::c)
        .def_readonly("phi", &PosteriorDraw::phi)
        .def_readonly("sigma_u", &PosteriorDraw::sigma_u);

    py::class_<PosteriorDraws>(m, "PosteriorDraws")
        .def_readonly("draws", &PosteriorDraws::draws)
        .def_readonly("mean_coef", &PosteriorDraws::mean_coef)
        .def_readonly("seed", &PosteriorDraws::seed);

    py::class_<IrfBands>(m, "IrfBands")
        .def_readonly("lo", &IrfBands::lo)
        .def_readonly("med", &IrfBands::med)
        .def_readonly("hi", &IrfBands::hi)
        .def_readonly("band", &IrfBands::band)
        .def_readonly("low_draw_warning", &IrfBands::low_draw_warning);

    m.def("default_prior", &default_prior, py::arg("pair"), py::arg("spec"));
    m.def("fit_bayes", &fit_bayes, py::arg("pair"), py::arg("spec"), py::arg("prior"),
          py::arg("n_draws"), py::arg("seed"));
    m.def("log_marginal_likelihood", &log_marginal_likelihood, py::arg("pair"), py::arg("spec"),
          py::arg("prior"));
    m.def("optimize_hyperparameters", &optimize_hyperparameters, py::arg("pair"),
          py::arg("spec"), py::arg("lambda_grid"), py::arg("base") = MinnesotaPrior{});
    m.def("default_lambda_grid", &default_lambda_grid);
    m.def("posterior_irf_bands", &posterior_irf_bands, py::arg("draws"), py::arg("ordering"),
          py::arg("horizon"), py::arg("band") = 0.68);

    // ---- simulation ----
    py::enum_<Attribution>(m, "Attribution")
        .value("b12_zero", Attribution::b12_zero)
        .value("b21_zero", Attribution::b21_zero);

    py::enum_<Region>(m, "Region")
        .value("blue", Region::blue)
        .value("green", Region::green)
        .value("white", Region::white);

    py::class_<DgpSpec>(m, "DgpSpec")
        .def(py::init([](Eigen::Matrix2d a, Eigen::Vector2d c, double rho_u, Attribution attr) {
                 DgpSpec d;
                 d.a = a;
                 d.c = c;
                 d.rho_u = rho_u;
                 d.attribution = attr;
                 return d;
             }),
             py::arg("a"), py::arg("c") = Eigen::Vector2d::Zero().eval(),
             py::arg("rho_u") = 0.0, py::arg("attribution") = Attribution::b12_zero)
        .def_readonly("a", &DgpSpec::a)
        .def_readonly("c", &DgpSpec::c)
        .def_readonly("rho_u", &DgpSpec::rho_u)
        .def("sigma_u", &DgpSpec::sigma_u)
        .def("b", &DgpSpec::b);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("rho", &SweepPoint::rho)
        .def_readonly("tau_12", &SweepPoint::tau_12)
        .def_readonly("tau_21", &SweepPoint::tau_21)
        .def_readonly("fevd12_ord1", &SweepPoint::fevd12_ord1)
        .def_readonly("fevd21_ord1", &SweepPoint::fevd21_ord1)
        .def_readonly("fevd12_ord2", &SweepPoint::fevd12_ord2)
        .def_readonly("fevd21_ord2", &SweepPoint::fevd21_ord2)
        .def_readonly("region", &SweepPoint::region);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("dgp_index", &SweepResult::dgp_index)
        .def_readonly("horizon", &SweepResult::horizon)
        .def_readonly("points", &SweepResult::points);

    m.def("dgp_catalog", &dgp_catalog, py::arg("index"));
    m.def("build_b", &build_b, py::arg("rho_u"), py::arg("attribution"));
    m.def("analytic_moments", &analytic_moments, py::arg("dgp"));
    m.def("sweep", &sweep, py::arg("a"), py::arg("c"), py::arg("rho_grid"), py::arg("horizon"));
    m.def("default_rho_grid", &default_rho_grid);
    m.def("simulate_path", &simulate_path, py::arg("dgp"), py::arg("n"), py::arg("seed"));

    // ---- TCR ----
    py::enum_<TcrMode>(m, "TcrMode")
        .value("per_draw", TcrMode::per_draw)
        .value("median_irf", TcrMode::median_irf);

    py::class_<TcrEstimate>(m, "TcrEstimate")
        .def_readonly("horizon", &TcrEstimate::horizon)
        .def_readonly("trend", &TcrEstimate::trend)
        .def_readonly("median", &TcrEstimate::median)
        .def_readonly("lo68", &TcrEstimate::lo68)
        .def_readonly("hi68", &TcrEstimate::hi68)
        .def_readonly("n_draws", &TcrEstimate::n_draws)
        .def_readonly("n_discarded", &TcrEstimate::n_discarded)
        .def_readonly("unreliable", &TcrEstimate::unreliable)
        .def_readonly("low_precision", &TcrEstimate::low_precision);

    m.def("cumulative_response", &cumulative_response, py::arg("irf"), py::arg("target"),
          py::arg("shock"), py::arg("h"));
    m.def("tcr_at", &tcr_at, py::arg("draws"), py::arg("ordering"), py::arg("h"),
          py::arg("mode") = TcrMode::per_draw,
          py::arg("doubling_forcing") = kDoublingForcing);
    m.attr("DOUBLING_FORCING") = kDoublingForcing;

    // ---- dataset / reports ----
    py::class_<Dataset>(m, "Dataset")
        .def_readonly("gmta", &Dataset::gmta)
        .def("forcing", &Dataset::forcing, py::arg("id"),
             py::return_value_policy::reference_internal)
        .def("label", &Dataset::label, py::arg("id"))
        .def_property_readonly("forcing_ids", [](const Dataset& d) {
            std::vector<std::string> ids;
            for (const auto& [id, s] : d.forcings) ids.push_back(id);
            return ids;
        });

    py::class_<PairAnalysis>(m, "PairAnalysis")
        .def_readonly("id", &PairAnalysis::id)
        .def_readonly("correlation", &PairAnalysis::correlation)
        .def_readonly("flows", &PairAnalysis::flows)
        .def_readonly("bic_criteria", &PairAnalysis::bic_criteria)
        .def_property_readonly("selected_lags",
                               [](const PairAnalysis& a) { return a.selected.p; })
        .def_property_readonly("rho_u_selected",
                               [](const PairAnalysis& a) { return a.selected.corr_test.rho_u; })
        .def_property_readonly("rho_u_p1",
                               [](const PairAnalysis& a) { return a.p1.corr_test.rho_u; })
        .def_property_readonly("fevd_p1", [](const PairAnalysis& a) {
            return std::vector<double>{a.p1.share_ig_i_first, a.p1.share_gi_i_first,
                                       a.p1.share_ig_g_first, a.p1.share_gi_g_first};
        });

    py::class_<AnalyzeOptions>(m, "AnalyzeOptions")
        .def(py::init<>())
        .def_readwrite("start_year", &AnalyzeOptions::start_year)
        .def_readwrite("end_year", &AnalyzeOptions::end_year)
        .def_readwrite("p_max", &AnalyzeOptions::p_max)
        .def_readwrite("fevd_horizon", &AnalyzeOptions::fevd_horizon);

    m.def("load_dataset", &load_dataset, py::arg("data_dir"));
    m.def("analyze_pair", &analyze_pair, py::arg("id"), py::arg("label"), py::arg("pair"),
          py::arg("options"));
}
