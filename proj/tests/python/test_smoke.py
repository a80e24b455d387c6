"""End-to-end smoke tests for the python bindings."""

import math
import os

import numpy as np
import pytest

cf = pytest.importorskip("causalflow")


def test_series_roundtrip():
    s = cf.TimeSeries("demo", list(range(1900, 1910)), np.arange(10.0))
    assert len(s) == 10
    d = cf.first_difference(s, 1)
    assert np.allclose(d.values, 1.0)


def test_ppm_to_rf_doubling():
    s = cf.TimeSeries("co2", [1850, 1851], np.array([285.0, 570.0]), "ppm")
    rf = cf.ppm_to_rf(s, 1850)
    assert rf.values[0] == 0.0
    assert rf.values[1] == pytest.approx(5.35 * math.log(2.0))


def test_simulated_pipeline():
    dgp = cf.dgp_catalog(1)
    pair = cf.simulate_path(dgp, 5000, 17)
    fit = cf.fit_ols(pair, cf.VarSpec(p=1))
    assert np.max(np.abs(np.asarray(fit.phi[0]) - np.asarray(dgp.a))) < 0.05

    factor = cf.cholesky_identify(fit.sigma_u, cf.Ordering.first(0))
    shares = cf.fevd(fit, factor, 10).at_horizon(10)
    assert np.allclose(np.asarray(shares).sum(axis=1), 1.0, atol=1e-10)

    flows = cf.info_flow_pair(pair, 1)
    assert abs(flows.tau_i_to_j) <= 1.0
    assert abs(flows.tau_j_to_i) <= 1.0


def test_bayes_determinism():
    pair = cf.simulate_path(cf.dgp_catalog(2), 300, 3)
    spec = cf.VarSpec(p=1)
    prior = cf.default_prior(pair, spec)
    d1 = cf.fit_bayes(pair, spec, prior, 50, 11)
    d2 = cf.fit_bayes(pair, spec, prior, 50, 11)
    assert np.array_equal(np.asarray(d1.draws[0].sigma_u), np.asarray(d2.draws[0].sigma_u))


def test_sweep_regions():
    dgp = cf.dgp_catalog(1)
    res = cf.sweep(dgp.a, dgp.c, cf.default_rho_grid(), 10)
    regions = {pt.region for pt in res.points}
    assert cf.Region.white in regions


def test_bundled_dataset():
    data_dir = os.environ.get("CAUSALFLOW_DATA")
    if not data_dir or not os.path.exists(os.path.join(data_dir, "manifest.json")):
        pytest.skip("bundled dataset not available")
    ds = cf.load_dataset(data_dir)
    gmta = ds.gmta.window(1850, 2005)
    assert len(gmta) == 156
    pair = cf.align_pair(ds.forcing("total_forcing"), ds.gmta).window(1850, 2005)
    opt = cf.AnalyzeOptions()
    row = cf.analyze_pair("total_forcing", "Total Forcing", pair, opt)
    assert row.selected_lags >= 1
    assert abs(row.correlation) <= 1.0
