import pytest

from emunruh.errors import ConfigError
from emunruh.presets import get_preset, list_presets


def test_every_figure_panel_is_registered():
    names = [name for name, _ in list_presets()]
    assert len(names) == 16
    assert "fig1-left" in names and "fig7-right" in names


def test_presets_expand_to_valid_scenarios():
    for name, _ in list_presets():
        configs = get_preset(name).scenarios(out_dir="out")
        assert {c.family for c in configs} == {"circular", "uniform", "thermal"}
        assert all(c.out_dir == "out" for c in configs)


def test_fig1_left_runs_nine_scenarios():
    configs = get_preset("fig1-left").scenarios()
    assert len(configs) == 9
    assert sorted({c.a for c in configs}) == [0.25, 1.0, 2.0]
    assert all(c.initial == "S" and c.L == 1.0 for c in configs)


def test_sweep_presets():
    configs = get_preset("fig4-right").scenarios()
    assert all(c.sweep is not None and c.sweep.axis == "L" for c in configs)
    assert configs[0].pol1 == "rho"
    assert get_preset("fig5-left").scenarios()[0].sweep.axis == "a"
    assert get_preset("fig6-right").scenarios()[0].p == 0.75


def test_unknown_preset():
    with pytest.raises(ConfigError):
        get_preset("fig9")
