import math
import os
import pathlib
import shutil

import numpy as np
import pytest

import facade2d

DATA = pathlib.Path(os.environ.get("FACADE_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_neumann_roots_are_multiples_of_pi():
    roots = facade2d.find_eigenvalues(0.0, 0.0, 4)
    assert np.allclose(roots, [math.pi * k for k in range(1, 5)], rtol=1e-13)


def test_surface_coefficient_law():
    assert facade2d.surface_coefficient(1.0, 0.0) == pytest.approx(5.82)
    assert facade2d.surface_coefficient(2.7, 4.0) == pytest.approx(5.82 + 15.84 * 2.7**0.32)


def test_error_metric_offset_and_errors():
    a = np.linspace(0.0, 1.0, 11)
    assert facade2d.error_metric("l2", a + 0.25, a) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        facade2d.error_metric("cubic", a, a)


def test_analytical_solution_decays():
    assert abs(facade2d.analytical_solution(0.3, 0.3, 10.0)) < 1e-12


def test_validation_run_coarse_grid():
    out = facade2d.validation_run("adi", 1e-3, nx=21, ny=21)
    assert not out["diverged"]
    assert 0.0 < out["eps2"] < 0.05


def test_explicit_divergence_is_reported():
    out = facade2d.validation_run("explicit", 1e-2, nx=21, ny=21, final_time=3.0)
    assert out["diverged"]


def test_simulate_from_config(tmp_path):
    shutil.copy(DATA / "winter_month.csv", tmp_path / "climate.csv")
    ini = (DATA / "example.ini").read_text()
    ini = ini.replace("horizon_days = 7", "horizon_days = 1").replace("winter_month.csv", "climate.csv")
    ini = ini.replace("nx = 101", "nx = 41").replace("ny = 81", "ny = 21")
    cfg = tmp_path / "run.ini"
    cfg.write_text(ini)
    out = facade2d.simulate(str(cfg))
    assert out["steps"] == 2400
    assert len(out["time"]) == len(out["flux"]) == 25
    assert out["months"] == ["2023-01"]
    assert np.all(np.isfinite(out["flux"]))
    assert out["final_field"].shape == (21, 41)


def test_missing_config_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        facade2d.simulate(str(tmp_path / "missing.ini"))
