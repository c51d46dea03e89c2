"""Shared fixtures.  The published-device fixtures are session-scoped so the
expensive reference run is propagated once and reused across test modules."""

from __future__ import annotations

import math

import pytest
from hypothesis import settings

from phonmem.basis import ProductBasis
from phonmem.device import DeviceParams
from phonmem.protocol import QubitState, build_memory_schedule, run_memory

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")

E_J_MEV = 43.05
E_C_NEV = 53.33
F0_GHZ = 15.0
G_RATIO = 0.05

# one line per acceptance criterion, echoed in the terminal summary so the
# verdicts are visible even when the tests pass
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def criterion():
    def record(label: str, ok: bool, detail: str, *, soft: bool = False) -> bool:
        status = "PASS" if ok else ("WARN" if soft else "FAIL")
        line = f"[{status}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return bool(ok) or soft
    return record


@pytest.fixture(scope="session")
def device() -> DeviceParams:
    return DeviceParams.from_lab_units(E_J_MEV, E_C_NEV, F0_GHZ, G_RATIO)


@pytest.fixture(scope="session")
def basis55() -> ProductBasis:
    return ProductBasis(5, 5)


@pytest.fixture(scope="session")
def equator() -> QubitState:
    return QubitState.from_bloch(0.5 * math.pi, 0.0)


@pytest.fixture(scope="session")
def fig1_schedule(device):
    return build_memory_schedule(device, 0.407)


@pytest.fixture(scope="session")
def fig1_result(device, basis55, equator, fig1_schedule):
    return run_memory(equator, device, fig1_schedule, basis55)
