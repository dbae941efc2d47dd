import json

from emunruh.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, build_parser, main


def _config(tmp_path, scenarios):
    path = tmp_path / "scenarios.json"
    path.write_text(json.dumps({"schema_version": 1, "scenarios": scenarios}), encoding="utf-8")
    return str(path)


def test_list_presets(capsys):
    assert main(["--list-presets"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "fig1-left" in out and "fig5-right" in out


def test_parser_defaults():
    args = build_parser().parse_args([])
    assert args.workers == 1 and args.preset == [] and args.log_level == "INFO"


def test_nothing_to_run_is_a_config_error():
    assert main([]) == EXIT_CONFIG


def test_bad_config_and_preset(tmp_path):
    path = _config(tmp_path, [{"family": "thermal", "a": 1.0, "L": 1.0, "colour": "red"}])
    assert main(["--config", path]) == EXIT_CONFIG
    assert main(["--preset", "fig42"]) == EXIT_CONFIG
    good = _config(tmp_path, [{"family": "thermal", "a": 1.0, "L": 1.0}])
    assert main(["--config", good, "--workers", "0"]) == EXIT_CONFIG


def test_run_config(tmp_path):
    out = tmp_path / "out"
    path = _config(
        tmp_path,
        [
            {"family": "thermal", "a": 1.0, "L": 1.0, "tau_max": 4.0, "dtau": 0.05},
            {"family": "thermal", "a": 1.0, "L": 1.0, "initial": "E", "tau_max": 4.0, "dtau": 0.05,
             "sweep_L": {"start": 0.5, "stop": 1.0, "count": 2}},
        ],
    )
    assert main(["--config", path, "--out", str(out), "--log-level", "WARNING"]) == EXIT_OK
    assert (out / "summary.csv").exists()
    assert (out / "thermal_a1_L1_zz_S.csv").exists()
    assert len(list(out.glob("*.window.json"))) == 1


def test_numerical_failure_exit_code(tmp_path):
    path = _config(tmp_path, [{"family": "circular", "a": 1.0, "L": 1.0, "pol1": "rho", "pol2": "phi"}])
    assert main(["--config", path, "--out", str(tmp_path / "out")]) == EXIT_NUMERICAL
    assert (tmp_path / "out" / "summary.csv").exists()
