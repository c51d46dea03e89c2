"""Closed-form rotating-wave amplitudes for the resonant swap segments.

Within the rotating-wave approximation and exactly on resonance, the single
excitation oscillates between |10> (qubit) and |01> (one phonon) at the
vacuum Rabi frequency.  These expressions are the analytic oracle the full
numerical propagator is measured against at weak coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class RwaAmplitudes:
    """Interaction-representation amplitudes of the three active states."""

    c00: complex
    c01: complex
    c10: complex

    @property
    def norm(self) -> float:
        return abs(self.c00) ** 2 + abs(self.c01) ** 2 + abs(self.c10) ** 2


def rwa_storage(alpha: complex, beta: complex, omega_rabi: float,
                dt: float) -> RwaAmplitudes:
    """Amplitudes a time dt into the resonant storage dwell.

    Starting from alpha|00> + beta|10>, the excited component swaps into the
    resonator: complete at dt = pi/omega_rabi.
    """
    if omega_rabi <= 0:
        raise ValueError("omega_rabi must be positive")
    half = 0.5 * omega_rabi * dt
    return RwaAmplitudes(c00=alpha,
                         c01=beta * math.sin(half),
                         c10=beta * math.cos(half))


def rwa_retrieval(alpha: complex, beta_stored: complex, omega_rabi: float,
                  dt: float) -> RwaAmplitudes:
    """Amplitudes a time dt into the resonant retrieval dwell.

    Starting from the stored state alpha|00> + beta|01>, the phonon swaps
    back into the qubit, arriving with amplitude +beta after dt = 3pi/omega
    (a half swap would land at -beta).
    """
    if omega_rabi <= 0:
        raise ValueError("omega_rabi must be positive")
    half = 0.5 * omega_rabi * dt
    return RwaAmplitudes(c00=alpha,
                         c01=beta_stored * math.cos(half),
                         c10=-beta_stored * math.sin(half))


def protocol_amplitudes(alpha: complex, beta: complex, omega_rabi: float,
                        t: float, t_store: tuple[float, float],
                        t_retrieve: tuple[float, float]) -> RwaAmplitudes:
    """Piecewise oracle over a full store/park/retrieve protocol.

    Amplitudes are frozen outside the two resonant dwells, which is the
    rotating-wave limit of an ideal far-detuned park.
    """
    t0, t1 = t_store
    t2, t3 = t_retrieve
    if t < t0:
        return RwaAmplitudes(alpha, 0.0, beta)
    if t <= t1:
        return rwa_storage(alpha, beta, omega_rabi, t - t0)
    stored = rwa_storage(alpha, beta, omega_rabi, t1 - t0)
    if t < t2:
        return stored
    if t <= t3:
        return rwa_retrieval(stored.c00, stored.c01, omega_rabi, t - t2)
    return rwa_retrieval(stored.c00, stored.c01, omega_rabi, t3 - t2)
