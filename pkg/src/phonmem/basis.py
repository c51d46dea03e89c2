"""Product basis and operator matrices in the instantaneous eigenbasis.

Basis states |m n> are products of the m-th instantaneous junction well state
at the current bias and the n-th resonator Fock state, flattened to
k = m * n_levels + n.  The junction states are harmonic-well eigenfunctions
centered at arcsin(s) with width ell(s); the resonator states never move.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import BiasPoint, DeviceParams, level_spacing, oscillator_length


@dataclass(frozen=True)
class ProductBasis:
    """Truncation of the junction (m) and resonator (n) ladders."""

    m_levels: int = 5
    n_levels: int = 5

    def __post_init__(self):
        if self.m_levels < 2 or self.n_levels < 2:
            raise ValueError("need at least two levels in each factor")

    @property
    def size(self) -> int:
        return self.m_levels * self.n_levels

    def index(self, m: int, n: int) -> int:
        if not (0 <= m < self.m_levels and 0 <= n < self.n_levels):
            raise IndexError(f"state ({m},{n}) outside truncation")
        return m * self.n_levels + n

    def unindex(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.size:
            raise IndexError(f"flat index {k} outside basis")
        return divmod(k, self.n_levels)

    def m_of(self) -> np.ndarray:
        """Junction quantum number per flat index."""
        return np.repeat(np.arange(self.m_levels), self.n_levels)

    def n_of(self) -> np.ndarray:
        return np.tile(np.arange(self.n_levels), self.m_levels)


def lowering(n_levels: int) -> np.ndarray:
    """Truncated ladder operator a with <n|a|n'> = sqrt(n') delta_{n,n'-1}."""
    return np.diag(np.sqrt(np.arange(1, n_levels)), k=1)


def energies(basis: ProductBasis, p: DeviceParams, b: BiasPoint) -> np.ndarray:
    """Diagonal energies E_mn = m * spacing(s) + n * omega0, zero-point dropped."""
    de = level_spacing(p, b)
    return de * basis.m_of() + p.omega0 * basis.n_of()


def phi_matrix(p: DeviceParams, b: BiasPoint, m_levels: int,
               include_diagonal: bool = True) -> np.ndarray:
    """Junction phase operator in the instantaneous well basis.

    <m|phi|m'> = arcsin(s) delta_mm' + (ell/sqrt 2)(sqrt(m') delta_{m,m'-1}
    + sqrt(m) delta_{m,m'+1}).  The diagonal part is the well minimum; it
    drives the resonator even with the junction idle and can be switched off
    to isolate the transition-dipole physics.
    """
    ell = oscillator_length(p, b)
    a = lowering(m_levels)
    phi = (ell / math.sqrt(2.0)) * (a + a.T)
    if include_diagonal:
        phi += math.asin(b.s) * np.eye(m_levels)
    return phi


def interaction_matrix(basis: ProductBasis, p: DeviceParams, b: BiasPoint,
                       include_diagonal_drive: bool = True) -> np.ndarray:
    """Qubit-resonator coupling -i g (a - a^dag) phi in the product basis.

    Hermitian, purely imaginary entries; couples n to n +- 1.
    """
    phi = phi_matrix(p, b, basis.m_levels, include_diagonal=include_diagonal_drive)
    a = lowering(basis.n_levels)
    return -1j * p.g * np.kron(phi, a - a.T)


def dds_junction(p: DeviceParams, b: BiasPoint, m_levels: int) -> np.ndarray:
    """Junction-factor matrix of d/ds between instantaneous well states.

    Two real antisymmetric bands: |dm| = 1 from the drift of the well minimum,
    |dm| = 2 from the breathing of the well width,

        <m|d/ds|m+1> = -c1 sqrt(m+1),   c1 = 1 / (sqrt(2) ell sqrt(1-s^2))
        <m|d/ds|m+2> = -c2 sqrt((m+1)(m+2)),   c2 = s / (8 (1-s^2))

    Signs fixed against finite differences of explicit wavefunction overlaps.
    """
    s = b.s
    ell = oscillator_length(p, b)
    c1 = 1.0 / (math.sqrt(2.0) * ell * math.sqrt(1.0 - s * s))
    c2 = s / (8.0 * (1.0 - s * s))
    m = np.arange(m_levels)
    d = np.zeros((m_levels, m_levels))
    if m_levels > 1:
        band1 = c1 * np.sqrt(m[1:])            # entry (m, m+1) for m = 0..
        d += np.diag(-band1, k=1) + np.diag(band1, k=-1)
    if m_levels > 2:
        band2 = c2 * np.sqrt((m[:-2] + 1) * (m[:-2] + 2))   # entry (m, m+2)
        d += np.diag(-band2, k=2) + np.diag(band2, k=-2)
    return d


def dds_matrix(basis: ProductBasis, p: DeviceParams, b: BiasPoint) -> np.ndarray:
    """Full nonadiabatic generator <mn|d/ds|m'n'>: junction factor x identity.

    The resonator does not depend on the bias, so its factor is the identity.
    """
    return np.kron(dds_junction(p, b, basis.m_levels), np.eye(basis.n_levels))


def junction_wavefunction(m: int, p: DeviceParams, b: BiasPoint,
                          phi: np.ndarray) -> np.ndarray:
    """Instantaneous junction eigenfunction psi_m(phi) in the harmonic limit.

    Normalized Hermite function with center arcsin(s) and length ell(s).
    Used by the finite-difference oracle for dds and by the lab-frame
    propagator's basis-change overlaps.
    """
    ell = oscillator_length(p, b)
    u = (phi - math.asin(b.s)) / ell
    # stable normalized recurrence h_{k+1} = sqrt(2/(k+1)) u h_k - sqrt(k/(k+1)) h_{k-1}
    h_prev = np.zeros_like(u)
    h = math.pi ** -0.25 * np.exp(-0.5 * u * u)
    for k in range(m):
        h, h_prev = (math.sqrt(2.0 / (k + 1)) * u * h
                     - math.sqrt(k / (k + 1)) * h_prev), h
    return h / math.sqrt(ell)
