"""End-to-end CLI behavior: files written, exit codes, error reporting."""

import json

import pytest

from phonmem.cli import main

FAST = {
    "basis": {"m_levels": 4, "n_levels": 4},
    "integrator": {"rel_tol": 1e-6, "abs_tol": 1e-9, "max_step_ns": 0.05},
    "protocol": {"store_hold_ns": 1.0, "window_ns": 2.0},
}


def write_cfg(tmp_path, extra=None, name="run.cfg"):
    data = json.loads(json.dumps(FAST))
    for section, keys in (extra or {}).items():
        data.setdefault(section, {})
        if isinstance(keys, dict):
            data[section].update(keys)
        else:
            data[section] = keys
    f = tmp_path / name
    f.write_text(json.dumps(data))
    return f


def test_simulate_writes_outputs(tmp_path, capsys):
    cfg = write_cfg(tmp_path)
    out = tmp_path / "out"
    assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "f2_mean" in printed and "wall" in printed
    traj = (out / "trajectory.csv").read_text()
    assert traj.splitlines()[0] == "t_ns,s,f2,stored_occupation,norm"
    rec = json.loads((out / "result.json").read_text())
    assert rec["config"]["basis"]["m_levels"] == 4
    assert rec["traces"] == "trajectory.csv"
    assert 0.0 <= rec["f2_mean"] <= 1.0
    assert rec["wall_seconds"] > 0


def test_simulate_oracle_columns(tmp_path):
    cfg = write_cfg(tmp_path)
    out = tmp_path / "out"
    assert main(["simulate", "--oracle", "--config", str(cfg),
                 "--out", str(out)]) == 0
    header = (out / "trajectory.csv").read_text().splitlines()[0]
    assert header.endswith(",rwa_f2,rwa_stored_occupation")


def test_simulate_dump_matrices(tmp_path):
    cfg = write_cfg(tmp_path)
    out = tmp_path / "out"
    assert main(["simulate", "--dump-matrices", "--config", str(cfg),
                 "--out", str(out)]) == 0
    rec = json.loads((out / "matrices.json").read_text())
    assert set(rec) == {"park", "resonant"}
    assert rec["park"]["s"] == 0.407
    size = 4 * 4
    assert len(rec["park"]["coupling_re"]) == size
    assert len(rec["park"]["coupling_re"][0]) == size
    assert len(rec["resonant"]["basis_drift"]) == size


def test_zero_coupling_is_config_failure(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"device": {"g_ratio": 0.0}})
    assert main(["simulate", "--config", str(cfg),
                 "--out", str(tmp_path / "o")]) == 1
    assert "zero coupling" in capsys.readouterr().err


def test_unreachable_resonance_is_failure(tmp_path, capsys):
    # resonator above the zero-bias plasma frequency: no crossing exists
    cfg = write_cfg(tmp_path, {"device": {"f0_ghz": 20.0}})
    assert main(["simulate", "--config", str(cfg),
                 "--out", str(tmp_path / "o")]) == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_config_key_is_failure(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"device": {"coupling": 0.05}})
    assert main(["simulate", "--config", str(cfg),
                 "--out", str(tmp_path / "o")]) == 1
    assert "unknown key" in capsys.readouterr().err


def test_missing_config_file_is_failure(tmp_path, capsys):
    assert main(["simulate", "--config", str(tmp_path / "nope.cfg"),
                 "--out", str(tmp_path / "o")]) == 1
    assert "error:" in capsys.readouterr().err


def test_sweep_writes_table(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"sweep": {"kind": "coupling",
                                         "grid": [0.04, 0.05]}})
    out = tmp_path / "out"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    assert "2 points (0 failed)" in capsys.readouterr().out
    lines = (out / "sweep.csv").read_text().splitlines()
    assert len(lines) == 3
    rec = json.loads((out / "sweep.json").read_text())
    assert [r["parameter"] for r in rec["rows"]] == [0.04, 0.05]


def test_sweep_reports_failed_points(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"sweep": {"kind": "bloch_meridian",
                                         "grid": [0.0, 1.0]},
                               "protocol": {"s_off": 0.9}})
    out = tmp_path / "out"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert "2 points (2 failed)" in captured.out
    assert "park bias" in captured.err
    rec = json.loads((out / "sweep.json").read_text())
    assert all(r["error"] for r in rec["rows"])


def test_optimize_detune_writes_record(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {"optimize": {"s_lo": 0.40, "s_hi": 0.40}})
    out = tmp_path / "out"
    assert main(["optimize-detune", "--config", str(cfg),
                 "--out", str(out)]) == 0
    assert "s_off 0.4000" in capsys.readouterr().out
    rec = json.loads((out / "result.json").read_text())
    assert rec["s_off"] == 0.40
    assert len(rec["evaluations"]) == 1


SELFTEST = {"integrator": {"rel_tol": 1e-9, "abs_tol": 1e-12,
                           "max_step_ns": 0.02}}


def test_selftest_passes(tmp_path, capsys):
    # invariant tolerances assume the default integrator accuracy; only
    # the basis is shrunk here
    cfg = write_cfg(tmp_path, SELFTEST)
    assert main(["selftest", "--config", str(cfg)]) == 0
    printed = capsys.readouterr().out
    assert "norm conservation" in printed
    assert "time reversal" in printed
    assert "FAIL" not in printed


def test_selftest_seed_changes_probe_state(tmp_path, capsys):
    out1 = []
    for seed in (0, 1):
        extra = dict(SELFTEST, seed=seed)
        cfg = write_cfg(tmp_path, extra, name=f"s{seed}.cfg")
        assert main(["selftest", "--config", str(cfg)]) == 0
        out1.append(capsys.readouterr().out.splitlines()[-1])
    assert out1[0] != out1[1]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == "0.1.0"


def test_command_required():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
