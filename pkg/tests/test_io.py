"""Output formats: CSV layout, float formatting, JSON records."""

import json
import math

import pytest

from phonmem.config import RunConfig
from phonmem.io import (
    ORACLE_COLUMNS,
    SWEEP_COLUMNS,
    TRAJECTORY_COLUMNS,
    optimum_record,
    result_record,
    sweep_csv,
    sweep_record,
    trajectory_csv,
    write_json,
    write_text,
)
from phonmem.protocol import DetuningOptimum
from phonmem.sweeps import SweepRow


def test_trajectory_csv_layout(fig1_result):
    text = trajectory_csv(fig1_result)
    assert text.endswith("\n") and not text.endswith("\n\n")
    lines = text.splitlines()
    assert lines[0] == "t_ns,s,f2,stored_occupation,norm"
    assert len(lines) == 1 + len(fig1_result.trajectory.t)
    first = lines[1].split(",")
    assert len(first) == len(TRAJECTORY_COLUMNS)
    assert float(first[0]) == 0.0
    assert float(first[1]) == 0.407          # parked at t = 0
    assert float(first[2]) == pytest.approx(1.0, abs=1e-12)
    assert float(first[4]) == pytest.approx(1.0, abs=1e-12)


def test_trajectory_csv_floats_round_trip(fig1_result):
    text = trajectory_csv(fig1_result)
    line = text.splitlines()[500]
    vals = [float(v) for v in line.split(",")]
    i = 499   # header offset
    assert vals[0] == fig1_result.trajectory.t[i]
    assert vals[2] == fig1_result.f2_trace[i]
    # repr round-trip: re-parsing and re-writing is the identity
    assert ",".join(repr(v) for v in vals) == line


def test_trajectory_oracle_columns(fig1_result):
    text = trajectory_csv(fig1_result, oracle=True)
    lines = text.splitlines()
    assert lines[0].split(",") == list(TRAJECTORY_COLUMNS + ORACLE_COLUMNS)
    last = [float(v) for v in lines[-1].split(",")]
    # ideal protocol returns the qubit exactly: rwa_f2 = 1 after retrieval
    assert last[5] == pytest.approx(1.0, abs=1e-12)
    first = [float(v) for v in lines[1].split(",")]
    assert first[5] == pytest.approx(1.0, abs=1e-12)
    assert first[6] == pytest.approx(0.25, abs=1e-12)  # |alpha|^2 pre-storage


def test_sweep_csv_layout():
    rows = [SweepRow(0.05, 0.9, 0.88, 0.93, 45.5, 0.407),
            SweepRow(0.06, math.nan, math.nan, math.nan, math.nan, 0.407,
                     error="ValueError: park bias 0.9 must lie in [0, s*)")]
    text = sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    ok = lines[1].split(",")
    assert ok[-1] == ""                      # empty error field on success
    assert float(ok[0]) == 0.05
    bad = lines[2].split(",")
    assert len(bad) == len(SWEEP_COLUMNS)    # commas in the message sanitized
    assert bad[1] == "nan"
    assert bad[-1] == "ValueError: park bias 0.9 must lie in [0; s*)"
    assert text.endswith("\n")


def test_result_record_contents(fig1_result):
    cfg = RunConfig()
    rec = result_record(fig1_result, cfg, 1.25)
    assert rec["f2_mean"] == fig1_result.f2_mean
    assert rec["wall_seconds"] == 1.25
    assert rec["traces"] == "trajectory.csv"
    assert rec["config"]["device"]["g_ratio"] == 0.05
    assert rec["qubit"]["alpha_re"] == pytest.approx(math.sqrt(0.5))
    assert rec["qubit"]["beta_im"] == 0.0
    sched = rec["schedule"]
    assert sched["s_off"] == 0.407
    assert sched["retrieval_done_ns"] == pytest.approx(59.41, abs=0.01)
    json.dumps(rec)                          # must be JSON-serializable


def test_sweep_record_contents():
    rows = [SweepRow(0.05, 0.9, 0.88, 0.93, 45.5, 0.407)]
    rec = sweep_record(rows, RunConfig(), 2.0, table_file="other.csv")
    assert rec["rows"][0]["parameter"] == 0.05
    assert rec["rows"][0]["error"] is None
    assert rec["table"] == "other.csv"
    json.dumps(rec)


def test_optimum_record_contents():
    opt = DetuningOptimum(0.4, 0.91, ((0.3, 0.8), (0.4, 0.91)))
    rec = optimum_record(opt, RunConfig(), 3.0)
    assert rec["s_off"] == 0.4
    assert rec["evaluations"] == [{"s_off": 0.3, "f2_mean": 0.8},
                                  {"s_off": 0.4, "f2_mean": 0.91}]
    json.dumps(rec)


def test_write_text_creates_parents(tmp_path):
    target = tmp_path / "a" / "b" / "out.csv"
    write_text(target, "x,y\n1,2\n")
    assert target.read_bytes() == b"x,y\n1,2\n"


def test_write_json_sorted_and_terminated(tmp_path):
    target = tmp_path / "r.json"
    write_json(target, {"b": 1, "a": [1.5]})
    text = target.read_text()
    assert text == '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n'
