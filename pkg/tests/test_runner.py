"""Tests for scenario runs, sweeps and batches."""

import csv
import json
import os

import numpy as np
import pytest

from emunruh.config import ScenarioConfig, SweepAxis
from emunruh.errors import ConfigError, SpectralError
from emunruh.io import SUMMARY_COLUMNS
from emunruh.runner import parallel_grid, pool_map, run_scenario, scenario_rates, sweep_max_concurrence


def _quick(**kwargs):
    base = dict(family="thermal", a=1.0, L=1.0, tau_max=5.0, dtau=0.05)
    base.update(kwargs)
    return ScenarioConfig(**base)


def test_run_scenario_writes_outputs(tmp_path):
    result = run_scenario(_quick(), out_dir=str(tmp_path))
    names = sorted(os.path.basename(p) for p in result.files)
    assert names == ["thermal_a1_L1_zz_S.csv", "thermal_a1_L1_zz_S.events.json", "thermal_a1_L1_zz_S.rates.csv"]
    assert all(os.path.exists(p) for p in result.files)
    assert result.trajectory.times[-1] == pytest.approx(5.0)
    assert result.events.max_concurrence == pytest.approx(1.0)
    events = json.loads((tmp_path / "thermal_a1_L1_zz_S.events.json").read_text(encoding="utf-8"))
    assert events["max_concurrence"] == pytest.approx(1.0)


def test_run_scenario_without_writing(tmp_path):
    result = run_scenario(_quick(out_dir=str(tmp_path)), write=False)
    assert result.files == []
    assert os.listdir(tmp_path) == []


def test_scenario_rates_follow_the_bath_temperature():
    rates = scenario_rates(_quick(a=0.5))
    assert rates.A1 == pytest.approx(0.25 / np.tanh(2.0 * np.pi), rel=1e-8)
    hot = scenario_rates(_quick(a=0.5, temperature=1.0))
    assert hot.A1 == pytest.approx(0.25 / np.tanh(0.5), rel=1e-8)


def test_errors_carry_the_configuration():
    with pytest.raises(SpectralError) as info:
        run_scenario(_quick(family="circular", pol1="rho", pol2="phi"), write=False)
    assert info.value.config_echo["pol2"] == "phi"
    assert "config:" in str(info.value)


def test_run_scenario_rejects_sweeps():
    cfg = _quick(sweep=SweepAxis("L", 0.5, 1.0, 2))
    with pytest.raises(ConfigError):
        run_scenario(cfg, write=False)
    with pytest.raises(ConfigError):
        sweep_max_concurrence(_quick(), write=False)


def test_pool_map_preserves_order():
    assert pool_map(abs, [-3, 2, -1], workers=2) == [3, 2, 1]
    with pytest.raises(ValueError):
        pool_map(abs, [1], workers=0)


def test_parallel_grid_records_failures(tmp_path):
    configs = [
        _quick(L=0.5),
        _quick(family="circular", pol1="rho", pol2="phi"),
        _quick(family="uniform", initial="A"),
    ]
    grid = parallel_grid(configs, out_dir=str(tmp_path))
    assert grid.failures == 1
    assert [row["family"] for row in grid.rows] == ["circular", "thermal", "uniform"]
    assert grid.rows[0]["status"].startswith("error: SpectralError")
    with open(grid.summary_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        table = list(reader)
    assert tuple(reader.fieldnames) == SUMMARY_COLUMNS
    assert table[0]["family"] == "circular" and table[0]["pol2"] == "phi"
    assert table[0]["max_concurrence"] == ""
    assert table[1]["max_concurrence"] != ""
    with open(grid.failures_path, newline="", encoding="utf-8") as fh:
        failed = list(csv.DictReader(fh))
    assert len(failed) == 1
    assert failed[0]["pol1"] == "rho"
    assert failed[0]["status"].startswith("error: SpectralError")
    assert len(list(tmp_path.glob("*.events.json"))) == 2


def test_clean_batch_writes_no_failures_file(tmp_path):
    grid = parallel_grid([_quick(L=0.5)], out_dir=str(tmp_path))
    assert grid.failures == 0
    assert grid.failures_path is None
    assert not (tmp_path / "failures.csv").exists()


def test_parallel_grid_is_independent_of_worker_count(tmp_path):
    configs = [_quick(L=L, initial=s) for L in (0.5, 1.0) for s in ("S", "E")]
    serial = parallel_grid(configs, workers=1, out_dir=str(tmp_path / "serial"))
    pooled = parallel_grid(list(reversed(configs)), workers=2, out_dir=str(tmp_path / "pooled"))
    with open(serial.summary_path, "rb") as a, open(pooled.summary_path, "rb") as b:
        assert a.read() == b.read()


def test_empty_batch_writes_header_only(tmp_path):
    grid = parallel_grid([], out_dir=str(tmp_path))
    assert grid.rows == []
    lines = (tmp_path / "summary.csv").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1 and lines[0].startswith("family,a,L")


def test_sweep_max_concurrence(tmp_path):
    cfg = _quick(a=2.0 / 3.0, L=0.5, initial="E", tau_max=20.0, sweep=SweepAxis("L", 0.5, 1.5, 3))
    sweep = sweep_max_concurrence(cfg, out_dir=str(tmp_path))
    np.testing.assert_allclose(sweep.values, [0.5, 1.0, 1.5])
    assert sweep.max_concurrence.shape == (3,)
    assert np.all(sweep.max_concurrence >= 0.0)
    sweep_csv, window_json = sweep.files
    assert sweep_csv.endswith(".sweep.csv") and os.path.exists(sweep_csv)
    window = json.loads(open(window_json, encoding="utf-8").read())
    assert window["axis"] == "L" and window["threshold"] == 1e-4
    header = open(sweep_csv, encoding="utf-8").readline().strip()
    assert header == "L,max_concurrence,arg_max_tau,entangled"
