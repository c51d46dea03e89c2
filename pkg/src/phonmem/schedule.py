"""Piecewise bias schedules s(t).

A schedule is a chain of hold and ramp segments.  Ramps default to the C1
smoothstep profile so the nonadiabatic drive sdot vanishes at segment
boundaries; linear ramps are kept for comparisons.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

RAMP_SHAPES = ("linear", "smoothstep")


@dataclass(frozen=True)
class Segment:
    kind: str                  # "hold" | "ramp"
    duration: float            # ns, >= 0
    s_start: float
    s_end: float
    shape: str = "smoothstep"  # ramps only

    def __post_init__(self):
        if self.kind not in ("hold", "ramp"):
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if self.duration < 0:
            raise ValueError("segment duration must be >= 0")
        for s in (self.s_start, self.s_end):
            if not 0.0 <= s < 0.99:
                raise ValueError(f"bias s = {s} outside [0, 0.99)")
        if self.kind == "hold" and self.s_start != self.s_end:
            raise ValueError("hold segment must keep s constant")
        if self.kind == "ramp" and self.shape not in RAMP_SHAPES:
            raise ValueError(f"unknown ramp shape {self.shape!r}")


def hold(s: float, duration: float) -> Segment:
    return Segment("hold", duration, s, s)


def ramp(s_start: float, s_end: float, duration: float,
         shape: str = "smoothstep") -> Segment:
    return Segment("ramp", duration, s_start, s_end, shape)


@dataclass(frozen=True)
class BiasSchedule:
    segments: tuple[Segment, ...]
    _starts: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("schedule needs at least one segment")
        for a, b in zip(segs, segs[1:]):
            if abs(a.s_end - b.s_start) > 1e-12:
                raise ValueError(
                    f"discontinuous schedule: segment ends at s={a.s_end}, "
                    f"next starts at s={b.s_start}")
        object.__setattr__(self, "segments", segs)
        starts = np.concatenate([[0.0], np.cumsum([s.duration for s in segs])])
        object.__setattr__(self, "_starts", starts)

    @property
    def total(self) -> float:
        return float(self._starts[-1])

    @property
    def boundaries(self) -> np.ndarray:
        """Segment boundary times, including 0 and the total duration."""
        return self._starts.copy()

    def _locate(self, t: float) -> tuple[Segment, float]:
        if t <= 0.0:
            return self.segments[0], 0.0
        if t >= self.total:
            seg = self.segments[-1]
            return seg, seg.duration
        i = bisect.bisect_right(self._starts, t) - 1
        # skip zero-length segments sitting exactly at t
        while self.segments[i].duration == 0.0 and i + 1 < len(self.segments):
            if self._starts[i + 1] <= t:
                i += 1
            else:
                break
        return self.segments[i], t - self._starts[i]

    def value(self, t: float) -> float:
        seg, tau = self._locate(t)
        if seg.kind == "hold" or seg.duration == 0.0:
            return seg.s_end if tau >= seg.duration else seg.s_start
        x = tau / seg.duration
        if seg.shape == "linear":
            w = x
        else:
            w = x * x * (3.0 - 2.0 * x)
        return seg.s_start + (seg.s_end - seg.s_start) * w

    def rate(self, t: float) -> float:
        """ds/dt at time t; zero on holds and at smoothstep endpoints."""
        seg, tau = self._locate(t)
        if seg.kind == "hold" or seg.duration == 0.0:
            return 0.0
        x = tau / seg.duration
        if seg.shape == "linear":
            dw = 1.0
        else:
            dw = 6.0 * x * (1.0 - x)
        return (seg.s_end - seg.s_start) * dw / seg.duration

    def time_reversed(self) -> "BiasSchedule":
        rev = [Segment(s.kind, s.duration, s.s_end, s.s_start, s.shape)
               for s in reversed(self.segments)]
        return BiasSchedule(tuple(rev))

    def integrate(self, f, t0: float | None = None, t1: float | None = None,
                  nodes: int = 24) -> float:
        """Integral of f(s(t)) dt over [t0, t1] by per-segment Gauss-Legendre.

        f must be vectorized over s.  Segment pieces are polynomial in t for
        both ramp shapes composed with smooth f, so modest node counts reach
        near machine precision.
        """
        t0 = 0.0 if t0 is None else t0
        t1 = self.total if t1 is None else t1
        x, w = np.polynomial.legendre.leggauss(nodes)
        total = 0.0
        for i, seg in enumerate(self.segments):
            a = max(float(self._starts[i]), t0)
            b = min(float(self._starts[i + 1]), t1)
            if b <= a:
                continue
            tm = 0.5 * (a + b)
            th = 0.5 * (b - a)
            ts = tm + th * x
            sv = np.array([self.value(t) for t in ts])
            total += th * float(np.dot(w, f(sv)))
        return total
