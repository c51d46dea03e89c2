"""Strict config loading: defaults, round-tripping, rejection of junk."""

import json
import math

import pytest

from phonmem.config import (
    ConfigError,
    RunConfig,
    load_config,
    loads_config,
    parse_config,
)


def test_empty_object_gives_defaults():
    cfg = loads_config("{}")
    assert cfg == RunConfig()
    assert cfg.device.e_j_mev == 43.05
    assert cfg.device.e_c_nev == 53.33
    assert cfg.device.f0_ghz == 15.0
    assert cfg.device.g_ratio == 0.05
    assert cfg.protocol.s_off == 0.407
    assert cfg.basis.m_levels == 5 and cfg.basis.n_levels == 5
    assert cfg.qubit.theta == pytest.approx(0.5 * math.pi)
    assert cfg.output_dir == "out"


def test_round_trip_identity():
    cfg = loads_config(json.dumps({
        "device": {"g_ratio": 0.02},
        "protocol": {"s_off": 0.35, "window_ns": 4.0, "phase_locked": False},
        "basis": {"m_levels": 6},
        "integrator": {"method": "rk4", "fixed_step_ns": 5e-5},
        "qubit": {"theta": 0.1, "phi": 1.2},
        "sweep": {"kind": "bloch_equator", "grid": [0.0, 1.0, 2.0]},
        "optimize": {"grid_points": 11},
        "output_dir": "elsewhere",
        "seed": 7,
    }))
    again = loads_config(cfg.to_json())
    assert again == cfg


def test_partial_sections_keep_other_defaults():
    cfg = loads_config('{"device": {"g_ratio": 0.01}}')
    assert cfg.device.g_ratio == 0.01
    assert cfg.device.e_j_mev == 43.05
    assert cfg.protocol == RunConfig().protocol


@pytest.mark.parametrize("text,frag", [
    ('{"devise": {}}', "unknown key"),
    ('{"device": {"ej": 1.0}}', "unknown key"),
    ('{"protocol": {"s_of": 0.4}}', "unknown key"),
    ('{"sweep": {"type": "coupling"}}', "unknown key"),
    ('{"optimize": {"workers": 4}}', "unknown key"),
])
def test_unknown_keys_rejected_everywhere(text, frag):
    with pytest.raises(ConfigError, match=frag):
        loads_config(text)


@pytest.mark.parametrize("text,frag", [
    ('{"device": {"e_j_mev": "43"}}', "expected a number"),
    ('{"device": {"e_j_mev": true}}', "expected a number"),
    ('{"basis": {"m_levels": 5.5}}', "expected an integer"),
    ('{"basis": {"m_levels": true}}', "expected an integer"),
    ('{"protocol": {"phase_locked": 1}}', "expected true/false"),
    ('{"protocol": {"shape": 3}}', "expected a string"),
    ('{"seed": "zero"}', "expected an integer"),
    ('{"output_dir": 5}', "expected a string"),
    ('{"device": 3}', "expected an object"),
    ('[1, 2]', "expected an object"),
])
def test_type_errors_rejected(text, frag):
    with pytest.raises(ConfigError, match=frag):
        loads_config(text)


@pytest.mark.parametrize("grid", ["[]", "[1, \"a\"]", "[true]", "3"])
def test_grid_must_be_numeric_array(grid):
    with pytest.raises(ConfigError, match="array of numbers"):
        loads_config('{"sweep": {"grid": %s}}' % grid)


def test_grid_accepts_integers_as_floats():
    cfg = loads_config('{"sweep": {"kind": "bloch_meridian", "grid": [0, 1, 3]}}')
    assert cfg.sweep.grid == (0.0, 1.0, 3.0)
    spec = cfg.sweep.to_spec(cfg.protocol.s_off)
    assert spec.grid == (0.0, 1.0, 3.0)
    assert spec.s_off == 0.407


def test_default_grid_depends_on_kind():
    eq = loads_config('{"sweep": {"kind": "bloch_equator"}}')
    spec = eq.sweep.to_spec(0.407)
    assert len(spec.grid) == 25
    assert spec.grid[0] == 0.0
    assert max(spec.grid) < 2.0 * math.pi   # no duplicate of the periodic point


@pytest.mark.parametrize("text,frag", [
    ('{"protocol": {"shape": "bezier"}}', "unknown ramp shape"),
    ('{"protocol": {"ramp_ns": -1}}', "non-negative"),
    ('{"protocol": {"window_ns": 0}}', "positive"),
    ('{"basis": {"m_levels": 1}}', "at least 2"),
    ('{"sweep": {"kind": "spiral"}}', "unknown sweep kind"),
    ('{"sweep": {"detuning_policy": "greedy"}}', "unknown detuning policy"),
    ('{"optimize": {"grid_points": 1}}', "at least 2"),
    ('{"optimize": {"resolution": 0}}', "positive"),
    ('{"integrator": {"method": "euler"}}', "method"),
    ('{"device": {"e_j_mev": -1}}', "."),
    ('{"sweep": {"kind": "coupling", "grid": [0.05, 0.01, 0.03]}}', "monotone"),
])
def test_semantic_validation(text, frag):
    with pytest.raises(ConfigError, match=frag):
        cfg = loads_config(text)
        cfg.sweep.to_spec(cfg.protocol.s_off)   # grid checks live in the spec


def test_invalid_json_is_config_error(tmp_path):
    f = tmp_path / "bad.cfg"
    f.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(f)


def test_load_config_reads_file(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text('{"seed": 3}')
    assert load_config(f).seed == 3


def test_bundled_reference_configs_load():
    import pathlib
    root = pathlib.Path(__file__).resolve().parents[1] / "configs"
    names = sorted(p.name for p in root.glob("*.cfg"))
    assert names == ["fig1.cfg", "fig2.cfg", "fig3_equator.cfg",
                     "fig3_meridian.cfg"]
    for p in root.glob("*.cfg"):
        cfg = load_config(p)
        assert cfg.device.g_ratio == 0.05
        assert cfg.protocol.s_off == 0.407


def test_parse_config_surfaces_device_errors_early():
    with pytest.raises(ConfigError):
        parse_config({"device": {"f0_ghz": -1.0}})


def test_schedule_kwargs_mirror_protocol_section():
    cfg = loads_config('{"protocol": {"ramp_ns": 3.0, "shape": "linear"}}')
    kw = cfg.protocol.schedule_kwargs()
    assert kw == {"ramp_ns": 3.0, "store_hold_ns": 5.4, "initial_hold_ns": 1.0,
                  "shape": "linear", "phase_locked": True, "window_ns": None}
