import json
import math

import numpy as np
import pytest

import burgers_tiles as bt


def test_profile_and_constants():
    assert bt.BUMP_SLOPE_MAX == pytest.approx(16 / (3 * math.sqrt(3)))
    assert bt.bump_profile(0.5) == 1.0
    assert bt.epsilon_for_cell(1) == pytest.approx(0.005)
    assert bt.shock_time(bt.bump(0, 0.25)) == pytest.approx(1.2990381, rel=1e-7)


def test_validate():
    assert bt.validate(bt.bump(0, 0.15))["pass"]
    rep = bt.validate(bt.bump(0, 0.2))
    assert rep["failed"] == ["envelope_dphi"]


def test_solve_tile_matches_oracle():
    tile = bt.TileSpec(0, 0, 65, 65)
    phi = bt.bump(0, 0.15)
    sol = bt.solve_tile(tile, phi.sample_bottom(tile))
    assert sol["u"].shape == (65, 65)
    assert sol["iterations"] <= 50
    assert sol["residual_sup"] <= 1e-8
    x = np.linspace(0.0, 1.0, 65)
    exact = bt.eval_exact(phi, 1.0, x)
    assert np.max(np.abs(sol["u"][-1] - exact)) < 5e-3


def test_residual_of_solution_is_small():
    tile = bt.TileSpec(0, 0, 33, 33)
    g = bt.bump(0, 0.1).sample_bottom(tile)
    sol = bt.solve_tile(tile, g, residual_tol=1e-5)
    F = bt.residual(tile, sol["u"], g)
    assert np.max(np.abs(F)) == pytest.approx(sol["residual_sup"])


def test_advance_and_decoupling():
    phi = bt.InitialData()
    phi.add_bump(-1, 0.06).add_bump(0, 0.15)
    full = bt.advance(phi, slabs=1, j_lo=-2, j_hi=2)
    cut = bt.advance(phi.without_cell(-1), slabs=1, j_lo=-2, j_hi=2)
    assert full["failure"] is None
    assert np.array_equal(full["slabs"][0]["tiles"][0]["u"], cut["slabs"][0]["tiles"][0]["u"])
    assert full["oracle"]["sup_err"] <= 5e-3


def test_operator_checks():
    tile = bt.TileSpec()
    rep = bt.operator_checks(tile, bt.bump(0, 0.15).sample_bottom(tile), n_samples=20, seed=1)
    assert rep["h_min"] == pytest.approx(1.05, abs=1e-12)
    assert rep["identity_defect"] <= 1e-12


def test_exceptions():
    with pytest.raises(bt.PastShock):
        bt.eval_exact(bt.bump(0, 0.25), 2.0, np.array([0.5]))
    with pytest.raises(ValueError):
        bt.TileSpec(0, 0, 64, 65)
    with pytest.raises(bt.ConfigError):
        bt.run("validate", {"nx": 4})


def test_run_commands(tmp_path):
    code, log = bt.run("validate", {"bumps": [{"cell": 0, "amplitude": 0.15}]}, tmp_path)
    assert code == 0
    assert json.loads((tmp_path / "validation.json").read_text())["validation"]["pass"]
    code, log = bt.run("solve", {"slabs": 2, "bumps": [{"cell": 0, "amplitude": 0.25}], "n_samples": 5}, tmp_path)
    assert code == 2
    assert "T* = 1.299" in log
