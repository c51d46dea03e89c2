"""Junction and resonator device parameters and the scalar relations between them.

The junction is a current-biased Josephson junction operated as a phase qubit
in the harmonic limit of its washboard potential well; the resonator is a
piezoelectric dilatational disk with a single relevant mode at omega0.  All
quantities returned here are angular frequencies (rad/ns, hbar = 1); see
units.py for the conversions from lab units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import units


class ResonanceUnreachableError(ValueError):
    """The resonator frequency exceeds the zero-bias plasma frequency."""


@dataclass(frozen=True)
class DeviceParams:
    """Static device parameters in internal units (rad/ns).

    e_j, e_c : junction Josephson and charging energies
    omega0   : resonator angular frequency
    g        : qubit-resonator coupling energy
    """

    e_j: float
    e_c: float
    omega0: float
    g: float

    def __post_init__(self):
        if not (self.e_j > 0 and self.e_c > 0 and self.omega0 > 0):
            raise ValueError("e_j, e_c and omega0 must be positive")
        if self.g < 0:
            raise ValueError("coupling g must be non-negative")
        # Harmonic treatment of the well assumes E_c << E_J.
        if self.e_c / self.e_j > 1e-3:
            raise ValueError(
                f"e_c/e_j = {self.e_c / self.e_j:.3e} outside the harmonic regime (limit 1e-3)"
            )

    @classmethod
    def from_lab_units(cls, e_j_mev: float, e_c_nev: float, f0_ghz: float,
                       g_ratio: float) -> "DeviceParams":
        """Build from meV / neV / GHz / coupling ratio g/(hbar*omega0)."""
        omega0 = units.ghz_to_radns(f0_ghz)
        return cls(
            e_j=units.mev_to_radns(e_j_mev),
            e_c=units.nev_to_radns(e_c_nev),
            omega0=omega0,
            g=g_ratio * omega0,
        )

    @property
    def g_ratio(self) -> float:
        return self.g / self.omega0

    def with_g_ratio(self, g_ratio: float) -> "DeviceParams":
        return replace(self, g=g_ratio * self.omega0)


@dataclass(frozen=True)
class BiasPoint:
    """Dimensionless bias current s = I/I_0 of the junction."""

    s: float

    def __post_init__(self):
        if not 0.0 <= self.s < 0.99:
            # beyond ~0.99 the well is too shallow for the harmonic picture
            raise ValueError(f"bias s = {self.s} outside [0, 0.99)")


def plasma_frequency(p: DeviceParams) -> float:
    """Zero-bias plasma frequency sqrt(2 E_c E_J)/hbar, rad/ns."""
    return math.sqrt(2.0 * p.e_c * p.e_j)


def level_spacing(p: DeviceParams, b: BiasPoint) -> float:
    """Junction level spacing at bias s: omega_p0 (1 - s^2)^(1/4), rad/ns.

    Strictly decreasing in s; the well softens as the bias approaches the
    critical current.
    """
    return plasma_frequency(p) * (1.0 - b.s * b.s) ** 0.25


def resonant_bias(p: DeviceParams) -> BiasPoint:
    """Bias s* at which the junction spacing equals the resonator quantum.

    Raises ResonanceUnreachableError when omega0 exceeds the zero-bias plasma
    frequency, in which case no bias can pull the junction down to resonance.
    """
    wp = plasma_frequency(p)
    if p.omega0 > wp:
        raise ResonanceUnreachableError(
            f"resonator at {units.radns_to_ghz(p.omega0):.3f} GHz above plasma "
            f"frequency {units.radns_to_ghz(wp):.3f} GHz: resonance unreachable"
        )
    return BiasPoint(math.sqrt(1.0 - (p.omega0 / wp) ** 4))


def oscillator_length(p: DeviceParams, b: BiasPoint) -> float:
    """Dimensionless width of the junction well ground state in phase.

    ell(s) = (2 E_c / E_J)^(1/4) (1 - s^2)^(-1/8); strictly increasing in s.
    """
    return (2.0 * p.e_c / p.e_j) ** 0.25 * (1.0 - b.s * b.s) ** (-0.125)


def dipole_element(p: DeviceParams, b: BiasPoint) -> float:
    """Off-diagonal phase matrix element <0|phi|1> = ell/sqrt(2)."""
    return oscillator_length(p, b) / math.sqrt(2.0)


def rabi_frequency(p: DeviceParams, b: BiasPoint) -> float:
    """Vacuum Rabi frequency 2 g <0|phi|1> / hbar at the given bias."""
    return 2.0 * p.g * dipole_element(p, b)
