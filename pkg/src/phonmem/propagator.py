"""Direct numerical integration of the coupled qubit-resonator dynamics.

The state is tracked in the instantaneous-interaction representation: complex
amplitudes c_mn on the instantaneous product basis together with the
accumulated dynamical phases theta_mn = int E_mn dt, which are integrated as
extra state variables rather than precomputed.  The equation of motion,

    i dc/dt = sum [dH - i sdot D]_{kk'} exp(i(theta_k - theta_k')) c_k',
    dtheta_k/dt = E_k(s),

contains the qubit-resonator coupling dH and the nonadiabatic generator
D = <k|d/ds|k'> driven by the bias sweep rate.

propagate_lab_frame is an independent cross-check: it integrates the same
physics in a fixed (bias-independent) product basis, where the nonadiabatic
coupling never appears explicitly, and projects back onto the instantaneous
basis at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh

from .basis import (ProductBasis, dds_matrix, interaction_matrix,
                    junction_wavefunction, lowering)
from .device import BiasPoint, DeviceParams, level_spacing, oscillator_length, plasma_frequency
from .schedule import BiasSchedule

S_REFRESH_TOL = 1e-6     # rebuild operator matrices when s moves further than this
NORM_ABORT_TOL = 1e-6


class PropagationError(RuntimeError):
    """Numerical propagation failed (step-size underflow, norm drift, ...)."""


@dataclass(frozen=True)
class IntegratorOptions:
    """Numerical integration controls.

    method 'adaptive' is an embedded adaptive Runge-Kutta pair (DOP853);
    'rk4' is a fixed-step classical RK4 kept solely as a cross-check.
    """

    method: str = "adaptive"
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_step: float = 0.02      # ns
    fixed_step: float = 1e-4    # ns, rk4 only

    def __post_init__(self):
        if self.method not in ("adaptive", "rk4"):
            raise ValueError(f"unknown integrator method {self.method!r}")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_step <= 0 or self.fixed_step <= 0:
            raise ValueError("steps must be positive")


@dataclass
class AmplitudeState:
    """Interaction-representation amplitudes and accumulated phases at time t."""

    c: np.ndarray        # complex, flat index k = m * n_levels + n
    theta: np.ndarray    # real, rad
    t: float             # ns

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.c) ** 2))


@dataclass
class Trajectory:
    """Sampled propagation history in the instantaneous representation."""

    t: np.ndarray        # (S,)
    s: np.ndarray        # (S,)
    c: np.ndarray        # (S, K) complex
    theta: np.ndarray    # (S, K)
    basis: ProductBasis

    @property
    def final(self) -> AmplitudeState:
        return AmplitudeState(self.c[-1].copy(), self.theta[-1].copy(), float(self.t[-1]))

    def norms(self) -> np.ndarray:
        return np.sum(np.abs(self.c) ** 2, axis=1)

    def population(self, m: int, n: int) -> np.ndarray:
        return np.abs(self.c[:, self.basis.index(m, n)]) ** 2


class _OperatorCache:
    """Equation-of-motion matrix at the current bias, refreshed lazily.

    Both operators factor into fixed structure matrices with bias-dependent
    scalar coefficients,

        dH(s)        = asin(s) K_diag + ell(s) K_ladder,
        D(s)         = c1(s) B1 + c2(s) B2,

    so a refresh costs four scalar-times-matrix products instead of a full
    rebuild.  The combined matrix dH - i sdot D is cached against (s, sdot);
    it is reused while s stays within S_REFRESH_TOL, which makes holds free.
    """

    def __init__(self, p: DeviceParams, basis: ProductBasis, include_diagonal_drive: bool):
        self.p = p
        self.basis = basis
        self.wp = plasma_frequency(p)
        self.m_idx = basis.m_of().astype(float)
        self.n_idx = basis.n_of().astype(float)
        self.omega_n = p.omega0 * self.n_idx
        self.ell0 = (2.0 * p.e_c / p.e_j) ** 0.25

        km, kn = basis.m_levels, basis.n_levels
        r = lowering(kn)
        r = r - r.T                                      # a - a^dag
        lad = lowering(km)
        lad = lad + lad.T                                # off-diagonal phi pattern
        gj = -1j * p.g
        self.k_diag = gj * np.kron(np.eye(km), r) if include_diagonal_drive else None
        self.k_ladder = (gj / math.sqrt(2.0)) * np.kron(lad, r)

        sq1 = np.sqrt(np.arange(1.0, km))                # <m|d/ds|m+1> pattern
        b1 = np.diag(sq1, 1) * -1.0 + np.diag(sq1, -1)
        mm = np.arange(0.0, km - 2)
        sq2 = np.sqrt((mm + 1.0) * (mm + 2.0))           # <m|d/ds|m+2> pattern
        b2 = np.diag(sq2, 2) * -1.0 + np.diag(sq2, -2)
        eye_n = np.eye(kn)
        self.d1 = np.kron(b1, eye_n)
        self.d2 = np.kron(b2, eye_n)

        self._s = None
        self._sdot = None
        self._mat = None

    def energies(self, s: float) -> np.ndarray:
        de = self.wp * (1.0 - s * s) ** 0.25
        return de * self.m_idx + self.omega_n

    def refresh(self, s: float, sdot: float) -> np.ndarray:
        if (self._s is not None and abs(s - self._s) <= S_REFRESH_TOL
                and sdot == self._sdot):
            return self._mat
        one = 1.0 - s * s
        ell = self.ell0 * one ** -0.125
        mat = ell * self.k_ladder
        if self.k_diag is not None:
            mat += math.asin(s) * self.k_diag
        if sdot != 0.0:
            c1 = 1.0 / (math.sqrt(2.0) * ell * math.sqrt(one))
            c2 = s / (8.0 * one)
            mat += (-1j * sdot * c1) * self.d1
            mat += (-1j * sdot * c2) * self.d2
        self._s = s
        self._sdot = sdot
        self._mat = mat
        return mat


def rhs(state: AmplitudeState, p: DeviceParams, basis: ProductBasis, s: float,
        sdot: float, include_diagonal_drive: bool = True
        ) -> tuple[np.ndarray, np.ndarray]:
    """Time derivatives (dc/dt, dtheta/dt) of the equation of motion.

    Standalone version used in tests; the propagator uses a cached equivalent.
    """
    b = BiasPoint(s)
    dh = interaction_matrix(basis, p, b, include_diagonal_drive=include_diagonal_drive)
    mat = dh if sdot == 0.0 else dh - 1j * sdot * dds_matrix(basis, p, b)
    phase = np.exp(1j * state.theta)
    dc = -1j * (phase * (mat @ (np.conj(phase) * state.c)))
    de = level_spacing(p, b)
    dtheta = de * basis.m_of() + p.omega0 * basis.n_of()
    return dc, dtheta


def _pack(c: np.ndarray, theta: np.ndarray) -> np.ndarray:
    return np.concatenate([c, theta.astype(complex)])


def _segment_rhs(cache: _OperatorCache, seg, t0: float):
    """Right-hand side specialized to one schedule segment.

    Phases theta ride along as (real-valued) state components; the bias and
    its rate come from segment-local arithmetic rather than a schedule
    lookup, which keeps the per-evaluation cost flat.
    """
    k = cache.basis.size

    if seg.kind == "hold":
        mat = cache.refresh(seg.s_start, 0.0)
        dtheta = cache.energies(seg.s_start).astype(complex)

        def f(t, y):
            phase = np.exp(1j * y[k:])
            dy = np.empty_like(y)
            dy[:k] = -1j * (phase * (mat @ (np.conj(phase) * y[:k])))
            dy[k:] = dtheta
            return dy

        return f

    ds = seg.s_end - seg.s_start
    inv_t = 1.0 / seg.duration
    s_start = seg.s_start
    smooth = seg.shape == "smoothstep"
    wp, m_idx, omega_n = cache.wp, cache.m_idx, cache.omega_n

    def f(t, y):
        x = (t - t0) * inv_t
        if smooth:
            w = x * x * (3.0 - 2.0 * x)
            dw = 6.0 * x * (1.0 - x)
        else:
            w, dw = x, 1.0
        s = s_start + ds * w
        mat = cache.refresh(s, ds * dw * inv_t)
        phase = np.exp(1j * y[k:])
        dy = np.empty_like(y)
        dy[:k] = -1j * (phase * (mat @ (np.conj(phase) * y[:k])))
        dy[k:] = wp * (1.0 - s * s) ** 0.25 * m_idx + omega_n
        return dy

    return f


def _sample_plan(sched: BiasSchedule, sample_times, n_samples: int) -> np.ndarray:
    """Requested sample times merged with all segment boundaries, sorted unique."""
    pts = [sched.boundaries]
    if sample_times is not None:
        req = np.asarray(sample_times, dtype=float)
        if req.size and (req.min() < -1e-12 or req.max() > sched.total + 1e-12):
            raise ValueError("sample times outside schedule")
        pts.append(np.clip(req, 0.0, sched.total))
    elif n_samples > 0:
        pts.append(np.linspace(0.0, sched.total, n_samples))
    merged = np.unique(np.concatenate(pts))
    return merged


def _max_energy_gap(p: DeviceParams, basis: ProductBasis, sched: BiasSchedule) -> float:
    s_lo = min(min(seg.s_start, seg.s_end) for seg in sched.segments)
    de = level_spacing(p, BiasPoint(s_lo))   # spacing largest at the lowest bias
    return (basis.m_levels - 1) * de + (basis.n_levels - 1) * p.omega0


def _rk4_to(f, t0: float, y0: np.ndarray, t1: float, h: float) -> np.ndarray:
    """Classical RK4 from t0 to t1 with steps of at most h, landing exactly."""
    n = max(1, math.ceil((t1 - t0) / h))
    dt = (t1 - t0) / n
    t, y = t0, y0
    for _ in range(n):
        k1 = f(t, y)
        k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = f(t + dt, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
    return y


def propagate(p: DeviceParams, basis: ProductBasis, initial: AmplitudeState,
              sched: BiasSchedule, opts: IntegratorOptions = IntegratorOptions(),
              *, sample_times=None, n_samples: int = 2000,
              include_diagonal_drive: bool = True) -> Trajectory:
    """Integrate the interaction-representation equation of motion over a schedule.

    Returns samples at the requested times (default: n_samples evenly spaced)
    plus every segment boundary.  Aborts with PropagationError if the norm
    drifts beyond 1e-6 or the stepper fails.
    """
    k = basis.size
    if initial.c.shape != (k,) or initial.theta.shape != (k,):
        raise ValueError("initial state size does not match basis")
    cache = _OperatorCache(p, basis, include_diagonal_drive)

    if opts.method == "rk4":
        gap = _max_energy_gap(p, basis, sched)
        if opts.fixed_step >= 0.1 / gap:
            raise ValueError(
                f"fixed_step {opts.fixed_step} too coarse for the fastest phase "
                f"(limit {0.1 / gap:.3e} ns)")

    samples = _sample_plan(sched, sample_times, n_samples)
    out_c = np.empty((samples.size, k), dtype=complex)
    out_th = np.empty((samples.size, k))
    y = _pack(initial.c, initial.theta)
    out_c[0] = y[:k]
    out_th[0] = y[k:].real

    bounds = sched.boundaries
    for i, seg in enumerate(sched.segments):
        t0, t1 = float(bounds[i]), float(bounds[i + 1])
        if t1 <= t0:
            continue
        f = _segment_rhs(cache, seg, t0)
        mask = (samples > t0 + 1e-15) & (samples <= t1 + 1e-15)
        t_eval = samples[mask]
        if opts.method == "adaptive":
            sol = solve_ivp(f, (t0, t1), y, method="DOP853",
                            rtol=opts.rel_tol, atol=opts.abs_tol,
                            max_step=opts.max_step,
                            t_eval=np.union1d(t_eval, [t1]))
            if not sol.success:
                raise PropagationError(
                    f"integrator failed in segment {i} ({seg.kind}): {sol.message}")
            pos = np.searchsorted(sol.t, t_eval)
            for j, pp in zip(np.nonzero(mask)[0], pos):
                out_c[j] = sol.y[:k, pp]
                out_th[j] = sol.y[k:, pp].real
            y = sol.y[:, -1]
        else:
            targets = list(t_eval)
            if not targets or targets[-1] != t1:
                targets.append(t1)
            t_cur = t0
            for tt in targets:
                y = _rk4_to(f, t_cur, y, tt, opts.fixed_step)
                t_cur = tt
                hits = np.nonzero(mask & np.isclose(samples, tt, rtol=0, atol=1e-12))[0]
                for j in hits:
                    out_c[j] = y[:k]
                    out_th[j] = y[k:].real
        norm = float(np.sum(np.abs(y[:k]) ** 2))
        if abs(norm - initial.norm) > NORM_ABORT_TOL:
            raise PropagationError(
                f"norm drifted to {norm:.12f} by t = {t1:.3f} ns (segment {i}); "
                "tighten tolerances or shrink the step")

    s_vals = np.array([sched.value(t) for t in samples])
    return Trajectory(samples, s_vals, out_c, out_th, basis)


def propagate_reversed(p: DeviceParams, basis: ProductBasis, final: AmplitudeState,
                       sched: BiasSchedule, opts: IntegratorOptions = IntegratorOptions(),
                       *, include_diagonal_drive: bool = True) -> AmplitudeState:
    """Integrate the same equation of motion backward from the schedule end.

    Used to verify that the dynamics is a unitary round trip: feeding the
    forward result back in returns the initial state.
    """
    k = basis.size
    cache = _OperatorCache(p, basis, include_diagonal_drive)
    y = _pack(final.c, final.theta)
    bounds = sched.boundaries
    for i in range(len(sched.segments) - 1, -1, -1):
        t0, t1 = float(bounds[i]), float(bounds[i + 1])
        if t1 <= t0:
            continue
        f = _segment_rhs(cache, sched.segments[i], t0)
        sol = solve_ivp(f, (t1, t0), y, method="DOP853",
                        rtol=opts.rel_tol, atol=opts.abs_tol, max_step=opts.max_step)
        if not sol.success:
            raise PropagationError(f"reverse integration failed: {sol.message}")
        y = sol.y[:, -1]
    return AmplitudeState(y[:k], y[k:].real, 0.0)


# ---------------------------------------------------------------------------
# Lab-frame cross-check


def _lab_levels(p: DeviceParams, sched: BiasSchedule, m_levels: int,
                s_anchor: float) -> int:
    """Junction levels needed so displaced instantaneous states fit the fixed basis."""
    ell0 = oscillator_length(p, BiasPoint(s_anchor))
    disp = max(abs(math.asin(seg_s) - math.asin(s_anchor))
               for seg in sched.segments for seg_s in (seg.s_start, seg.s_end))
    alpha = disp / (math.sqrt(2.0) * ell0)
    return max(m_levels + 8, m_levels + math.ceil(alpha * alpha + 8.0 * alpha) + 4)


def _junction_overlaps(p: DeviceParams, s_from: float, s_to: float,
                       m_from: int, m_to: int, grid_points: int = 6001) -> np.ndarray:
    """Overlap matrix G[K, m] = <well_K(s_from) | well_m(s_to)> by quadrature."""
    b_from, b_to = BiasPoint(s_from), BiasPoint(s_to)
    ell = max(oscillator_length(p, b_from), oscillator_length(p, b_to))
    centers = sorted((math.asin(s_from), math.asin(s_to)))
    reach = (math.sqrt(2.0 * max(m_from, m_to) + 1.0) + 10.0) * ell
    phi = np.linspace(centers[0] - reach, centers[1] + reach, grid_points)
    fr = np.array([junction_wavefunction(m, p, b_from, phi) for m in range(m_from)])
    to = np.array([junction_wavefunction(m, p, b_to, phi) for m in range(m_to)])
    return np.trapezoid(fr[:, None, :] * to[None, :, :], phi, axis=2)


class _LabOperators:
    """Fixed-basis operators anchored at the midpoint of the bias range."""

    def __init__(self, p: DeviceParams, m_lab: int, n_levels: int, s_anchor: float,
                 include_diagonal_drive: bool):
        self.p = p
        self.m_lab = m_lab
        self.n_levels = n_levels
        self.s_anchor = s_anchor
        self.include_diag = include_diagonal_drive
        self.wp = plasma_frequency(p)
        ell0 = oscillator_length(p, BiasPoint(s_anchor))
        b = lowering(m_lab)
        x = (b + b.T) / math.sqrt(2.0)          # (phi - center)/ell0
        self.phi_rel = ell0 * x                  # phi - center, fixed basis
        self.center = math.asin(s_anchor)
        nhat = np.diag(np.arange(m_lab, dtype=float))
        self.p2 = (2.0 * nhat + np.eye(m_lab) - b @ b - b.T @ b.T) / (2.0 * ell0 * ell0)
        self.phi_rel2 = self.phi_rel @ self.phi_rel
        a_res = lowering(n_levels)
        self.r_res = a_res - a_res.T             # a - a^dag
        self.r_res_t = self.r_res.T.copy()
        self.n_res = np.arange(n_levels, dtype=float)

    def h_junction(self, s: float) -> np.ndarray:
        """Harmonic junction Hamiltonian at bias s in the fixed basis, m*spacing gauge."""
        de = self.wp * (1.0 - s * s) ** 0.25
        k2 = 0.5 * self.p.e_j * math.sqrt(1.0 - s * s)
        shift = self.center - math.asin(s)       # displacement of fixed center from well
        m_lab = self.m_lab
        return (self.p.e_c * self.p2
                + k2 * (self.phi_rel2 + 2.0 * shift * self.phi_rel
                        + shift * shift * np.eye(m_lab))
                - 0.5 * de * np.eye(m_lab))

    def phi_drive(self, s: float) -> np.ndarray:
        """Junction factor of the coupling: full phi, or phi - arcsin(s) without drive."""
        if self.include_diag:
            return self.phi_rel + self.center * np.eye(self.m_lab)
        return self.phi_rel + (self.center - math.asin(s)) * np.eye(self.m_lab)

    def h_full(self, s: float) -> np.ndarray:
        h = np.kron(self.h_junction(s), np.eye(self.n_levels)).astype(complex)
        h += np.kron(np.eye(self.m_lab), np.diag(self.p.omega0 * self.n_res))
        h += -1j * self.p.g * np.kron(self.phi_drive(s), self.r_res)
        return h


def propagate_lab_frame(p: DeviceParams, basis: ProductBasis, initial: AmplitudeState,
                        sched: BiasSchedule, opts: IntegratorOptions = IntegratorOptions(),
                        *, include_diagonal_drive: bool = True,
                        m_levels_lab: int | None = None) -> AmplitudeState:
    """Cross-check propagation in a fixed product basis.

    Expands the initial instantaneous-basis state on a larger bias-independent
    well basis, integrates i dpsi/dt = H(s(t)) psi where all bias dependence
    lives in H itself (no explicit d/ds term), then projects the result back
    onto the instantaneous basis at the final bias and strips the accumulated
    dynamical phases.  Holds are advanced by exact eigendecomposition steps;
    ramps use the adaptive stepper.
    """
    if opts.method != "adaptive":
        raise ValueError("lab-frame cross-check supports only the adaptive method")
    k = basis.size
    if initial.c.shape != (k,):
        raise ValueError("initial state size does not match basis")

    s_ends = [seg_s for seg in sched.segments for seg_s in (seg.s_start, seg.s_end)]
    s_anchor = 0.5 * (min(s_ends) + max(s_ends))
    m_lab = m_levels_lab or _lab_levels(p, sched, basis.m_levels, s_anchor)
    ops = _LabOperators(p, m_lab, basis.n_levels, s_anchor, include_diagonal_drive)

    s0 = sched.value(0.0)
    g0 = _junction_overlaps(p, s_anchor, s0, m_lab, basis.m_levels)
    c0 = (np.exp(-1j * initial.theta) * initial.c).reshape(basis.m_levels,
                                                           basis.n_levels)
    psi = (g0 @ c0).astype(complex)              # (m_lab, n_levels)
    lost = initial.norm - float(np.sum(np.abs(psi) ** 2))
    if abs(lost) > 1e-8:
        raise PropagationError(
            f"lab basis with {m_lab} levels loses {lost:.2e} of the initial norm")

    n_diag = p.omega0 * ops.n_res

    def f(t, y):
        s = sched.value(t)
        psi_m = y.reshape(ops.m_lab, ops.n_levels)
        h_psi = ops.h_junction(s) @ psi_m
        h_psi += psi_m * n_diag[None, :]
        h_psi += -1j * p.g * (ops.phi_drive(s) @ psi_m) @ ops.r_res_t
        return (-1j * h_psi).ravel()

    bounds = sched.boundaries
    y = psi.ravel()
    for i, seg in enumerate(sched.segments):
        t0, t1 = float(bounds[i]), float(bounds[i + 1])
        if t1 <= t0:
            continue
        if seg.kind == "hold":
            h = ops.h_full(seg.s_start)
            w, v = eigh(h)
            y = v @ (np.exp(-1j * w * (t1 - t0)) * (v.conj().T @ y))
        else:
            sol = solve_ivp(f, (t0, t1), y, method="DOP853",
                            rtol=opts.rel_tol, atol=opts.abs_tol, max_step=opts.max_step)
            if not sol.success:
                raise PropagationError(f"lab-frame integrator failed: {sol.message}")
            y = sol.y[:, -1]
        norm = float(np.sum(np.abs(y) ** 2))
        if abs(norm - initial.norm) > NORM_ABORT_TOL:
            raise PropagationError(
                f"lab-frame norm drifted to {norm:.12f} by t = {t1:.3f} ns")

    s_end = sched.value(sched.total)
    g1 = _junction_overlaps(p, s_anchor, s_end, m_lab, basis.m_levels)
    c_end = g1.T.conj() @ y.reshape(ops.m_lab, ops.n_levels)

    wp = plasma_frequency(p)
    j_phase = sched.integrate(lambda sv: wp * (1.0 - sv * sv) ** 0.25) if sched.total > 0 else 0.0
    theta = (initial.theta + j_phase * basis.m_of()
             + p.omega0 * sched.total * basis.n_of())
    c = np.exp(1j * theta) * c_end.ravel()
    return AmplitudeState(c, theta, sched.total)
