"""
Adaptive Gauss-Kronrod quadrature for truncated-Lorentzian integrands on [0, inf).

The half-line is cut into three panels around a peak at E_R of width Gamma_R:

    [0, E_R - 8 Gamma_R]      (dropped when empty)
    [E_R - 8 Gamma_R, E_R + 8 Gamma_R] intersected with [0, inf)
    [E_R + 8 Gamma_R, inf)    mapped to t in [0, 1) by E = E_hi + t/(1 - t)

and a single globally adaptive G7-K15 bisection runs over all panels at
once, always splitting the subinterval with the largest error estimate.
Integrands must accept numpy arrays.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "PEAK_HALF_WIDTH",
    "integrate_halfline",
    "integrate_halfline_k",
    "integrate_interval",
    "peak_window",
    "substitute_wavenumber",
]

PEAK_HALF_WIDTH = 8.0

# Kronrod 15-point abscissae on [0, 1] (symmetric), with the embedded 7-point Gauss rule
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944678192810732055,
    0.417959183673469387755102040816327,
])
# full 15-node layout: -x0..-x6, 0, x6..x0
_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
_KW = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = [_WG[0], _WG[1], _WG[2], _WG[3], _WG[2], _WG[1], _WG[0]]

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and peak location for ``integrate_halfline``."""

    peak_center: float
    peak_width: float
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if not self.peak_width > 0:
            raise DomainError("peak_width must be positive")
        if self.abs_tol < 0 or self.max_subdivisions < 1:
            raise DomainError("abs_tol must be >= 0 and max_subdivisions >= 1")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    subdivisions: int = 0


def _gk15(f, a, b):
    """One G7-K15 panel on [a, b]; QUADPACK-style error estimate."""
    hl = 0.5 * (b - a)
    c = 0.5 * (a + b)
    fv = np.asarray(f(c + hl * _NODES), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise DomainError(f"integrand not finite on [{a!r}, {b!r}]")
    resk = float(np.dot(_KW, fv))
    resg = float(np.dot(_GW, fv))
    resabs = float(np.dot(_KW, np.abs(fv)))
    resasc = float(np.dot(_KW, np.abs(fv - 0.5 * resk)))
    ahl = abs(hl)
    resk *= hl
    resabs *= ahl
    resasc *= ahl
    err = abs((resk - resg * hl))
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return resk, err


def _tail(f, start):
    def mapped(t):
        t = np.asarray(t, dtype=float)
        one_minus = 1.0 - t
        inside = one_minus > 0
        safe = np.where(inside, one_minus, 1.0)
        return np.where(inside, f(start + t / safe) / safe**2, 0.0)
    return mapped


def _adaptive(panels, rel_tol, abs_tol, max_subdivisions):
    """
    Globally adaptive bisection over a list of (integrand, a, b) panels.

    Subintervals are kept in a heap keyed on error; ties break on creation
    order so the refinement sequence is deterministic.
    """
    heap = []
    counter = 0
    evaluations = 0
    for idx, (f, a, b) in enumerate(panels):
        if b <= a:
            continue
        val, err = _gk15(f, a, b)
        evaluations += 15
        heapq.heappush(heap, (-err, counter, idx, a, b, val))
        counter += 1
    if not heap:
        return QuadratureResult(0.0, 0.0, 0, 0)

    total = math.fsum(item[5] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    splits = 0
    while total_err > rel_tol * abs(total) + abs_tol:
        if splits >= max_subdivisions:
            raise QuadratureError(
                f"max_subdivisions={max_subdivisions} exceeded "
                f"(value {total!r}, error estimate {total_err:.3e})", total, total_err)
        neg_err, _, idx, a, b, val = heapq.heappop(heap)
        f = panels[idx][0]
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            # interval cannot be split further in floating point
            heapq.heappush(heap, (0.0, counter, idx, a, b, val))
            counter += 1
            total_err += neg_err
            continue
        total -= val
        total_err += neg_err
        for lo, hi in ((a, mid), (mid, b)):
            v, e = _gk15(f, lo, hi)
            heapq.heappush(heap, (-e, counter, idx, lo, hi, v))
            counter += 1
            total += v
            total_err += e
        evaluations += 30
        splits += 1
        if splits % 64 == 0:
            # resynchronise the running sums
            total = math.fsum(item[5] for item in heap)
            total_err = math.fsum(-item[0] for item in heap)

    # fixed panel/position order for a reproducible final sum
    ordered = sorted(heap, key=lambda item: (item[2], item[3]))
    value = math.fsum(item[5] for item in ordered)
    error = math.fsum(-item[0] for item in ordered)
    return QuadratureResult(value, error, evaluations, splits)


def peak_window(spec: QuadratureSpec) -> tuple[float, float]:
    """[E_R - 8 Gamma_R, E_R + 8 Gamma_R] clipped to [0, inf)."""
    lo = max(0.0, spec.peak_center - PEAK_HALF_WIDTH * spec.peak_width)
    hi = max(lo, spec.peak_center + PEAK_HALF_WIDTH * spec.peak_width)
    return lo, hi


def integrate_interval(f: Callable, a: float, b: float, rel_tol: float = 1e-9,
                       abs_tol: float = 1e-14, max_subdivisions: int = 2000) -> QuadratureResult:
    """Adaptive G7-K15 on a finite interval [a, b]."""
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integrate_interval needs finite limits")
    if b < a:
        r = _adaptive([(f, b, a)], rel_tol, abs_tol, max_subdivisions)
        return QuadratureResult(-r.value, r.error_estimate, r.evaluations, r.subdivisions)
    return _adaptive([(f, a, b)], rel_tol, abs_tol, max_subdivisions)


def _three_panels(f, lo, hi, spec):
    panels = [(f, 0.0, lo), (f, lo, hi), (_tail(f, hi), 0.0, 1.0)]
    return _adaptive(panels, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)


def integrate_halfline(f: Callable, spec: QuadratureSpec) -> QuadratureResult:
    """
    Integrate ``f(E)`` over [0, inf) with the peak-window partition.

    ``f`` must be finite on (0, inf) and decay faster than 1/E.

    Raises
    ------
    QuadratureError
        Subdivision budget exhausted; carries the partial value and error.
    """
    lo, hi = peak_window(spec)
    return _three_panels(f, lo, hi, spec)


def substitute_wavenumber(f_E: Callable, hbar2_2m: float) -> Callable:
    """
    Rewrite an energy integrand as a wavenumber integrand.

    With E(k) = hbar2_2m * k^2, returns g(k) = f_E(E(k)) * dE/dk so that
    int_0^inf f_E dE = int_0^inf g dk.
    """
    def g(k):
        k = np.asarray(k, dtype=float)
        return f_E(hbar2_2m * k * k) * (2.0 * hbar2_2m * k)
    return g


def integrate_halfline_k(g: Callable, spec: QuadratureSpec, hbar2_2m: float) -> QuadratureResult:
    """
    Integrate a wavenumber integrand g(k) over [0, inf).

    The energy partition of ``spec`` is mapped to k = sqrt(E / hbar2_2m);
    the tail is k = k_hi + t/(1 - t).
    """
    lo, hi = peak_window(spec)
    return _three_panels(g, math.sqrt(lo / hbar2_2m), math.sqrt(hi / hbar2_2m), spec)
