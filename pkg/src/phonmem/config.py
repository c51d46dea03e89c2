"""Run configuration: strict JSON loading with defaults filled in.

A config file is one JSON object with optional sections; every key is
validated and unknown keys are rejected so a typo cannot silently fall back
to a default.  The effective config (all defaults applied) serializes back
to JSON and reloads to an identical object, which is what result files
embed for provenance.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .device import DeviceParams
from .propagator import IntegratorOptions
from .schedule import RAMP_SHAPES
from .sweeps import (DEFAULT_COUPLING_GRID, DEFAULT_EQUATOR_GRID,
                     DEFAULT_MERIDIAN_GRID, DEFAULT_S_OFF, DETUNING_POLICIES,
                     SWEEP_KINDS, SweepSpec)


class ConfigError(ValueError):
    """Malformed or physically invalid run configuration."""


@dataclass(frozen=True)
class DeviceConfig:
    e_j_mev: float = 43.05
    e_c_nev: float = 53.33
    f0_ghz: float = 15.0
    g_ratio: float = 0.05

    def to_params(self) -> DeviceParams:
        try:
            return DeviceParams.from_lab_units(self.e_j_mev, self.e_c_nev,
                                               self.f0_ghz, self.g_ratio)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class ProtocolConfig:
    s_off: float = DEFAULT_S_OFF
    ramp_ns: float = 2.0
    store_hold_ns: float = 5.4
    initial_hold_ns: float = 1.0
    shape: str = "smoothstep"
    phase_locked: bool = True
    window_ns: float | None = None
    include_diagonal_drive: bool = True

    def __post_init__(self):
        if self.shape not in RAMP_SHAPES:
            raise ConfigError(f"unknown ramp shape {self.shape!r}")
        for name in ("ramp_ns", "store_hold_ns", "initial_hold_ns"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")
        if self.window_ns is not None and self.window_ns <= 0:
            raise ConfigError("window_ns must be positive")

    def schedule_kwargs(self) -> dict:
        return {
            "ramp_ns": self.ramp_ns,
            "store_hold_ns": self.store_hold_ns,
            "initial_hold_ns": self.initial_hold_ns,
            "shape": self.shape,
            "phase_locked": self.phase_locked,
            "window_ns": self.window_ns,
        }


@dataclass(frozen=True)
class BasisConfig:
    m_levels: int = 5
    n_levels: int = 5

    def __post_init__(self):
        if self.m_levels < 2 or self.n_levels < 2:
            raise ConfigError("basis needs at least 2 levels per subsystem")


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = "adaptive"
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_step_ns: float = 0.02
    fixed_step_ns: float = 1e-4

    def to_options(self) -> IntegratorOptions:
        try:
            return IntegratorOptions(method=self.method, rel_tol=self.rel_tol,
                                     abs_tol=self.abs_tol,
                                     max_step=self.max_step_ns,
                                     fixed_step=self.fixed_step_ns)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class QubitConfig:
    theta: float = 0.5 * math.pi
    phi: float = 0.0


@dataclass(frozen=True)
class SweepConfig:
    kind: str = "coupling"
    grid: tuple[float, ...] | None = None
    detuning_policy: str = "fixed"
    reopt_lo: float = 0.30
    reopt_hi: float = 0.50

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise ConfigError(f"unknown sweep kind {self.kind!r}")
        if self.detuning_policy not in DETUNING_POLICIES:
            raise ConfigError(f"unknown detuning policy {self.detuning_policy!r}")

    def to_spec(self, s_off: float) -> SweepSpec:
        grid = self.grid
        if grid is None:
            grid = {"coupling": DEFAULT_COUPLING_GRID,
                    "bloch_meridian": DEFAULT_MERIDIAN_GRID,
                    "bloch_equator": DEFAULT_EQUATOR_GRID}[self.kind]
        try:
            return SweepSpec(kind=self.kind, grid=tuple(float(g) for g in grid),
                             detuning_policy=self.detuning_policy, s_off=s_off,
                             reopt_range=(self.reopt_lo, self.reopt_hi))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class OptimizeConfig:
    s_lo: float = 0.30
    s_hi: float = 0.50
    grid_points: int = 21
    resolution: float = 1e-3

    def __post_init__(self):
        if self.grid_points < 2:
            raise ConfigError("grid_points must be at least 2")
        if self.resolution <= 0:
            raise ConfigError("resolution must be positive")


@dataclass(frozen=True)
class RunConfig:
    device: DeviceConfig = field(default_factory=DeviceConfig)
    protocol: ProtocolConfig = field(default_factory=ProtocolConfig)
    basis: BasisConfig = field(default_factory=BasisConfig)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    qubit: QubitConfig = field(default_factory=QubitConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    optimize: OptimizeConfig = field(default_factory=OptimizeConfig)
    output_dir: str = "out"
    seed: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


_SECTIONS = {
    "device": DeviceConfig,
    "protocol": ProtocolConfig,
    "basis": BasisConfig,
    "integrator": IntegratorConfig,
    "qubit": QubitConfig,
    "sweep": SweepConfig,
    "optimize": OptimizeConfig,
}

_SCALAR_TYPES = {
    float: (int, float),
    int: (int,),
    str: (str,),
    bool: (bool,),
}


def _build_section(cls, data: dict, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object")
    spec = {f.name: f for f in fields(cls)}
    unknown = set(data) - set(spec)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {sorted(unknown)}")
    kwargs = {}
    for name, value in data.items():
        hint = spec[name].type
        if name == "grid":
            if value is not None:
                if (not isinstance(value, list) or not value
                        or not all(isinstance(v, (int, float))
                                   and not isinstance(v, bool) for v in value)):
                    raise ConfigError(f"{where}.{name}: expected a non-empty "
                                      "array of numbers")
                value = tuple(float(v) for v in value)
        elif name == "window_ns" and value is None:
            pass
        elif "bool" in str(hint):
            if not isinstance(value, bool):
                raise ConfigError(f"{where}.{name}: expected true/false")
        elif "int" in str(hint) and "float" not in str(hint):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{where}.{name}: expected an integer")
        elif "float" in str(hint):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{where}.{name}: expected a number")
            value = float(value)
        elif "str" in str(hint):
            if not isinstance(value, str):
                raise ConfigError(f"{where}.{name}: expected a string")
        kwargs[name] = value
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def parse_config(data: dict) -> RunConfig:
    """Validate a parsed JSON object into a RunConfig (defaults filled)."""
    if not isinstance(data, dict):
        raise ConfigError("top level: expected an object")
    known = set(_SECTIONS) | {"output_dir", "seed"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"top level: unknown key(s) {sorted(unknown)}")
    kwargs = {}
    for name, cls in _SECTIONS.items():
        if name in data:
            kwargs[name] = _build_section(cls, data[name], name)
    if "output_dir" in data:
        if not isinstance(data["output_dir"], str):
            raise ConfigError("output_dir: expected a string")
        kwargs["output_dir"] = data["output_dir"]
    if "seed" in data:
        if isinstance(data["seed"], bool) or not isinstance(data["seed"], int):
            raise ConfigError("seed: expected an integer")
        kwargs["seed"] = data["seed"]
    cfg = RunConfig(**kwargs)
    cfg.device.to_params()          # surface physical validation errors now
    cfg.integrator.to_options()
    return cfg


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON config file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return parse_config(data)


def loads_config(text: str) -> RunConfig:
    """Parse a JSON config from a string (round-trip helper)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return parse_config(data)
