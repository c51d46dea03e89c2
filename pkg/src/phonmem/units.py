"""Unit conventions.

Internally hbar = 1, time is measured in nanoseconds, and every energy is an
angular frequency in rad/ns.  Configuration files keep the lab-friendly units
(meV, neV, GHz, dimensionless coupling ratio); the converters below are the
only place the two meet.
"""

import math

# CODATA 2018 reduced Planck constant, eV ns.
HBAR_EV_NS = 6.582119569e-16 * 1e9

TWO_PI = 2.0 * math.pi


def mev_to_radns(e_mev: float) -> float:
    """Energy in meV to angular frequency in rad/ns (hbar = 1)."""
    return e_mev * 1e-3 / HBAR_EV_NS


def nev_to_radns(e_nev: float) -> float:
    return e_nev * 1e-9 / HBAR_EV_NS


def ghz_to_radns(f_ghz: float) -> float:
    """Linear frequency in GHz to angular frequency in rad/ns."""
    return TWO_PI * f_ghz


def radns_to_ghz(omega: float) -> float:
    return omega / TWO_PI
