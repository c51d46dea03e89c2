"""File outputs: trajectory CSV, sweep CSV, and JSON result reports.

Everything is plain text, newline-terminated, decimal-point only.  Floats
are written with repr (shortest round-trip form), so identical runs produce
byte-identical files on any platform and the figures component can rely on
full double precision.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig
from .protocol import DetuningOptimum, MemoryResult
from .rwa import protocol_amplitudes
from .sweeps import SweepRow

TRAJECTORY_COLUMNS = ("t_ns", "s", "f2", "stored_occupation", "norm")
ORACLE_COLUMNS = ("rwa_f2", "rwa_stored_occupation")
SWEEP_COLUMNS = ("parameter", "f2_mean", "f2_min", "f2_max",
                 "gate_time_ns", "s_off", "error")


def _fmt(x) -> str:
    return repr(float(x))


def trajectory_csv(res: MemoryResult, *, oracle: bool = False) -> str:
    """Render the sampled run as CSV; oracle adds rotating-wave columns."""
    traj = res.trajectory
    mem = res.schedule
    cols = TRAJECTORY_COLUMNS + (ORACLE_COLUMNS if oracle else ())
    lines = [",".join(cols)]
    s_of_t = [mem.bias.value(float(t)) for t in traj.t]
    norms = np.sum(np.abs(traj.c) ** 2, axis=-1)
    q = res.qubit
    for i, t in enumerate(traj.t):
        row = [_fmt(t), _fmt(s_of_t[i]), _fmt(res.f2_trace[i]),
               _fmt(res.occupation_trace[i]), _fmt(norms[i])]
        if oracle:
            ideal = protocol_amplitudes(q.alpha, q.beta, mem.omega_rabi,
                                        float(t), mem.t_store, mem.t_retrieve)
            f2 = abs(np.conj(q.alpha) * ideal.c00
                     + np.conj(q.beta) * ideal.c10) ** 2
            occ = abs(np.conj(q.alpha) * ideal.c00
                      + np.conj(q.beta) * ideal.c01) ** 2
            row += [_fmt(f2), _fmt(occ)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def sweep_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for r in rows:
        # exception text may contain commas; keep the row naively splittable
        err = (r.error or "").replace(",", ";").replace("\n", " ")
        lines.append(",".join([
            _fmt(r.parameter), _fmt(r.f2_mean), _fmt(r.f2_min),
            _fmt(r.f2_max), _fmt(r.gate_time_ns), _fmt(r.s_off),
            err,
        ]))
    return "\n".join(lines) + "\n"


def _schedule_record(mem) -> dict:
    return {
        "s_off": mem.s_off,
        "s_star": mem.s_star,
        "omega_rabi_radns": mem.omega_rabi,
        "t_store_ns": list(mem.t_store),
        "t_retrieve_ns": list(mem.t_retrieve),
        "window_ns": list(mem.window),
        "park_ns": mem.park_ns,
        "beat_phase_rad": mem.beat_phase,
        "resonant_dwell_ns": mem.resonant_dwell_ns,
        "retrieval_done_ns": mem.retrieval_done_ns,
        "total_ns": mem.total_ns,
    }


def result_record(res: MemoryResult, cfg: RunConfig, wall_s: float,
                  *, trace_file: str = "trajectory.csv") -> dict:
    """JSON-compatible report of one memory run."""
    return {
        "version": __version__,
        "wall_seconds": wall_s,
        "config": asdict(cfg),
        "f2_mean": res.f2_mean,
        "f2_min": res.f2_min,
        "f2_max": res.f2_max,
        "storage_exit_occupation": res.storage_exit_occupation,
        "qubit": {"alpha_re": res.qubit.alpha.real,
                  "alpha_im": res.qubit.alpha.imag,
                  "beta_re": res.qubit.beta.real,
                  "beta_im": res.qubit.beta.imag},
        "schedule": _schedule_record(res.schedule),
        "traces": trace_file,
    }


def sweep_record(rows: list[SweepRow], cfg: RunConfig, wall_s: float,
                 *, table_file: str = "sweep.csv") -> dict:
    return {
        "version": __version__,
        "wall_seconds": wall_s,
        "config": asdict(cfg),
        "rows": [asdict(r) for r in rows],
        "table": table_file,
    }


def optimum_record(opt: DetuningOptimum, cfg: RunConfig, wall_s: float) -> dict:
    return {
        "version": __version__,
        "wall_seconds": wall_s,
        "config": asdict(cfg),
        "s_off": opt.s_off,
        "f2_mean": opt.f2_mean,
        "evaluations": [{"s_off": s, "f2_mean": f} for s, f in opt.evaluations],
    }


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def write_json(path: Path, record: dict) -> None:
    write_text(path, json.dumps(record, indent=2, sort_keys=True) + "\n")
