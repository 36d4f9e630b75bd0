import math

import numpy as np
import pytest

import pulseloss as pl


def test_step_checkpoint():
    assert pl.usigma_step_skin(1 / math.pi, 1.0) == pytest.approx(0.5724164238441930, abs=1e-12)


def test_erfcx_vectorized():
    x = np.array([0.5, 1.0, 30.0])
    np.testing.assert_allclose(
        pl.erfcx(x), [0.61569034419292587, 0.427583576155807, 0.018795888861416751], rtol=1e-14
    )
    with pytest.raises(pl.DomainError):
        pl.erfcx(-1.0)


def test_constants():
    tc = pl.derive_constants("coax", 5.8e7, r_outer=5e-3, r_inner=1e-3, thickness=10e-6)
    assert tc["t_sigma"] == pytest.approx(0.0016475313393406168, rel=1e-12)
    assert tc["t_R"] == pytest.approx(9.775316756082935e-07, rel=1e-12)
    with pytest.raises(pl.ConfigError):
        pl.derive_constants("coax", 5.8e7, r_outer=1e-3, r_inner=5e-3)


def test_second_kind_matches_closed_form():
    r = pl.solve_second_kind(pl.Step(1.0), 1.0, 1024, 3.0)
    exact = pl.usigma_step_skin(r["t"], 1.0)
    assert np.max(np.abs(r["u"] - exact)) < 1e-5
    assert r["method"] == "second-kind"


def test_sampled_pulse_and_resolvent_refusal():
    w = pl.Sampled([0.0, 0.1, 0.2], [0.0, 0.5, 1.0])
    r = pl.solve_second_kind(w, 1.0, 64, 1.0)
    assert r["u"][-1] > 0
    with pytest.raises(pl.UnsupportedError):
        pl.resolvent_solution(w, 1.0, 64, 1.0)


def test_t_delta():
    assert pl.find_t_delta(0.1, pl.Step(), "resistive", 1.0) == pytest.approx(
        0.1053605156578263, rel=1e-11
    )
    with pytest.raises(pl.UnreachableError):
        pl.find_t_delta(0.9, pl.Step(), "skin", 1.0, horizon=1.0)


def test_figure1_shape():
    data = pl.figure1_data(n=64)
    assert data.shape[1] == 5
    assert set(np.unique(data[:, 0])) == {1e-3, 1e-2, 1e-1, 1.0}


def test_fdtd_probe():
    p = pl.simulate_step(n_cells=1000)
    t_R = 250e-9 / 0.5
    i = np.searchsorted(p["t"], t_R)
    assert p["delta"][i] == pytest.approx(1 - math.exp(-1), rel=0.02)


def test_validation_filter():
    results = pl.run_validation("9")
    assert [r["id"] for r in results] == ["9"]
    assert results[0]["passed"]
