import math

import numpy as np
import pytest

import chemsim


def test_truncation_vectorizes():
    u = np.array([-2.0, -0.5, 0.5, 3.0, 6.0, 20.0])
    a = chemsim.eval_a(u, m=5)
    assert a.shape == u.shape
    assert a[0] == -1.0
    assert a[2] == 0.5
    assert a[4] == pytest.approx(5.8125, abs=1e-15)
    assert a[5] == 6.0
    assert chemsim.eval_a_prime(-0.5, m=3) == pytest.approx(23 / 16, abs=1e-15)
    assert chemsim.eval_a_second(5.0, m=4) == pytest.approx(-0.75, abs=1e-15)
    assert chemsim.eval_a(1e6) == 1e6
    assert chemsim.eval_g(1.0, 2.0, m=1) == pytest.approx(0.5)
    lhs, rhs = chemsim.power_gap(0.0, 2.0, 2.0)
    assert (lhs, rhs) == (4.0, 8.0)


def test_operators_conserve_and_match_shape():
    rng = np.random.default_rng(3)
    f = rng.random((16, 12))
    u = 3 * rng.random((16, 12))
    lap = chemsim.laplacian(f)
    assert lap.shape == f.shape
    assert abs(chemsim.integrate(lap)) < 1e-12
    div = chemsim.chemo_divergence(u, f, m=4, flux="upwind")
    assert abs(chemsim.integrate(div)) < 1e-12
    assert np.allclose(chemsim.laplacian(np.full(8, 2.0)), 0.0)


def test_simulate_homogeneous():
    u, v, rows = chemsim.simulate(np.full(8, 2.0), np.full(8, 3.0), s=2.0, m=8, dt=0.01, t_end=1.0, every=10)
    assert len(rows["t"]) == 11
    assert np.all(u == 2.0)
    assert abs(v[0] - 3 * math.exp(-4)) <= 5 * 0.01
    assert np.all(np.diff(rows["max_v"]) <= 0)
    mass = rows["mass_u"]
    assert np.max(np.abs(mass - mass[0])) < 1e-12


def test_run_config_writes_csv(tmp_path):
    text = f"dim=1\nn=16\nt_end=0.02\ndt=0.01\nm=4\nu0=eigen 1 0.5 1\noutput_dir={tmp_path}\n"
    path, rows = chemsim.run_config(text)
    assert (tmp_path / "diagnostics.csv").exists()
    assert path.endswith("diagnostics.csv")
    assert list(rows) == [
        "t", "mass_u", "min_u", "max_u", "min_v", "max_v", "energy",
        "grad_z_l2sq", "grad_z_l4", "consumption_diss", "g_mass", "v_lower_bound_ref",
    ]
    assert chemsim.canonical_config(chemsim.canonical_config(text)) == chemsim.canonical_config(text)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError, match="s must be"):
        chemsim.run_config("s=0.5\ndim=1\nn=8\nt_end=1")
    with pytest.raises(ValueError):
        chemsim.simulate(np.ones(4), np.ones(4), flux="sideways")


def test_verify_identities():
    rep = chemsim.verify_identities([32, 64, 128])
    assert rep["boundary_slope"] >= 1.8
    assert rep["levels"][-1]["boundary"][0] == pytest.approx(math.pi**4, rel=0.01)
    flat = chemsim.verify_identities([16, 32], constant=True)
    assert all(lvl["winkler"][2] == 0.0 for lvl in flat["levels"])
