"""Command-line front end: simulate, sweep, optimize-detune, selftest.

Exit codes: 0 success, 1 configuration or device error, 2 numerical
propagation failure.  All file outputs go through the io module so other
programs (including the figures package) see one stable format.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, io
from .basis import ProductBasis, dds_matrix, interaction_matrix
from .config import ConfigError, RunConfig, load_config
from .device import ResonanceUnreachableError, resonant_bias
from .propagator import PropagationError, propagate, propagate_reversed
from .protocol import (QubitState, build_memory_schedule, initial_amplitudes,
                       optimize_detuning, run_memory)
from .sweeps import sweep_bloch, sweep_coupling


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="phonmem",
        description="Phase qubit / phonon resonator quantum memory simulator")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None,
                        help="JSON config file (defaults used if omitted)")
    common.add_argument("--out", type=Path, default=None,
                        help="output directory (overrides config output_dir)")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for parallel grids")

    sim = sub.add_parser("simulate", parents=[common],
                         help="run one memory cycle")
    sim.add_argument("--oracle", action="store_true",
                     help="add rotating-wave oracle columns to trajectory.csv")
    sim.add_argument("--dump-matrices", action="store_true",
                     help="also write the coupling and basis-drift matrices "
                          "at the park and resonant bias")
    sub.add_parser("sweep", parents=[common], help="run the configured sweep")
    sub.add_parser("optimize-detune", parents=[common],
                   help="optimize the park bias for fidelity")
    sub.add_parser("selftest", parents=[common],
                   help="run fast internal consistency checks")
    return ap


def _load(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    return cfg


def _outdir(args, cfg: RunConfig) -> Path:
    return args.out if args.out is not None else Path(cfg.output_dir)


def _dump_matrices(out: Path, cfg: RunConfig) -> None:
    p = cfg.device.to_params()
    basis = ProductBasis(cfg.basis.m_levels, cfg.basis.n_levels)
    from .device import BiasPoint
    record = {}
    for label, b in (("park", BiasPoint(cfg.protocol.s_off)),
                     ("resonant", resonant_bias(p))):
        h = interaction_matrix(
            basis, p, b,
            include_diagonal_drive=cfg.protocol.include_diagonal_drive)
        d = dds_matrix(basis, p, b)
        record[label] = {
            "s": b.s,
            "coupling_re": h.real.tolist(),
            "coupling_im": h.imag.tolist(),
            "basis_drift": d.tolist(),
        }
    io.write_json(out / "matrices.json", record)


def cmd_simulate(args) -> int:
    cfg = _load(args)
    out = _outdir(args, cfg)
    p = cfg.device.to_params()
    basis = ProductBasis(cfg.basis.m_levels, cfg.basis.n_levels)
    q = QubitState.from_bloch(cfg.qubit.theta, cfg.qubit.phi)
    mem = build_memory_schedule(p, cfg.protocol.s_off,
                                **cfg.protocol.schedule_kwargs())
    t0 = time.perf_counter()
    res = run_memory(q, p, mem, basis, cfg.integrator.to_options(),
                     include_diagonal_drive=cfg.protocol.include_diagonal_drive)
    wall = time.perf_counter() - t0
    io.write_text(out / "trajectory.csv",
                  io.trajectory_csv(res, oracle=args.oracle))
    io.write_json(out / "result.json", io.result_record(res, cfg, wall))
    if args.dump_matrices:
        _dump_matrices(out, cfg)
    print(f"f2_mean {res.f2_mean:.6f}  f2_min {res.f2_min:.6f}  "
          f"f2_max {res.f2_max:.6f}  wall {wall:.2f} s")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load(args)
    out = _outdir(args, cfg)
    p = cfg.device.to_params()
    basis = ProductBasis(cfg.basis.m_levels, cfg.basis.n_levels)
    spec = cfg.sweep.to_spec(cfg.protocol.s_off)
    kwargs = dict(basis=basis, opts=cfg.integrator.to_options(),
                  workers=args.workers,
                  include_diagonal_drive=cfg.protocol.include_diagonal_drive,
                  **cfg.protocol.schedule_kwargs())
    t0 = time.perf_counter()
    if spec.kind == "coupling":
        q = QubitState.from_bloch(cfg.qubit.theta, cfg.qubit.phi)
        rows = sweep_coupling(spec, p, q, **kwargs)
    else:
        rows = sweep_bloch(spec, p, **kwargs)
    wall = time.perf_counter() - t0
    io.write_text(out / "sweep.csv", io.sweep_csv(rows))
    io.write_json(out / "sweep.json", io.sweep_record(rows, cfg, wall))
    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"point {r.parameter!r} failed: {r.error}", file=sys.stderr)
    print(f"{len(rows)} points ({len(failed)} failed)  wall {wall:.2f} s")
    return 0


def cmd_optimize(args) -> int:
    cfg = _load(args)
    out = _outdir(args, cfg)
    p = cfg.device.to_params()
    basis = ProductBasis(cfg.basis.m_levels, cfg.basis.n_levels)
    q = QubitState.from_bloch(cfg.qubit.theta, cfg.qubit.phi)
    t0 = time.perf_counter()
    opt = optimize_detuning(
        q, p, (cfg.optimize.s_lo, cfg.optimize.s_hi), basis=basis,
        opts=cfg.integrator.to_options(), grid_points=cfg.optimize.grid_points,
        resolution=cfg.optimize.resolution, workers=args.workers,
        include_diagonal_drive=cfg.protocol.include_diagonal_drive,
        **cfg.protocol.schedule_kwargs())
    wall = time.perf_counter() - t0
    io.write_json(out / "result.json", io.optimum_record(opt, cfg, wall))
    print(f"s_off {opt.s_off:.4f}  f2_mean {opt.f2_mean:.6f}  "
          f"evaluations {len(opt.evaluations)}  wall {wall:.2f} s")
    return 0


def cmd_selftest(args) -> int:
    """Fast invariant checks on a reduced schedule; seeded by the config."""
    cfg = _load(args)
    rng = np.random.default_rng(cfg.seed)
    p = cfg.device.to_params()
    basis = ProductBasis(cfg.basis.m_levels, cfg.basis.n_levels)
    theta = math.acos(rng.uniform(-1.0, 1.0))
    phi = rng.uniform(0.0, 2.0 * math.pi)
    q = QubitState.from_bloch(theta, phi)
    mem = build_memory_schedule(p, cfg.protocol.s_off, store_hold_ns=1.0,
                                window_ns=2.0)
    opts = cfg.integrator.to_options()
    res = run_memory(q, p, mem, basis, opts)
    checks = []

    norm_err = float(np.max(np.abs(
        np.sum(np.abs(res.trajectory.c) ** 2, axis=-1) - 1.0)))
    checks.append(("norm conservation", norm_err, 1e-8))

    start = initial_amplitudes(q, basis)
    fwd = propagate(p, basis, start, mem.bias, opts)
    back = propagate_reversed(p, basis, fwd.final, mem.bias, opts)
    overlap = abs(np.vdot(start.c, back.c)) ** 2
    checks.append(("time reversal", 1.0 - overlap, 1e-6))

    f2 = res.f2_mean
    ok = True
    for name, err, tol in checks:
        status = "ok" if err < tol else "FAIL"
        ok = ok and err < tol
        print(f"{name}: {err:.3e} (tol {tol:.0e}) {status}")
    print(f"f2_mean {f2:.6f} (bloch theta {theta:.3f}, phi {phi:.3f})")
    return 0 if ok else 2


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handlers = {
        "simulate": cmd_simulate,
        "sweep": cmd_sweep,
        "optimize-detune": cmd_optimize,
        "selftest": cmd_selftest,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ResonanceUnreachableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PropagationError as exc:
        print(f"propagation error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
