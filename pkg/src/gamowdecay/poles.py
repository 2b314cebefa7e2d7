"""
Resonance poles of the delta-shell S-matrix.

Poles are the fourth-quadrant zeros of J2(k). They are located by scanning
|J2| on a rectangular grid, polishing every local minimum with Newton's
method (analytic derivative), and checking completeness with the argument
principle: the winding number of J2 around the search rectangle must equal
the number of distinct roots found inside it.

Each pole carries its k-plane S-matrix residue and the Zeldovich
normalization N_n^2 = i res[S(q)]_{q = k_n}.
"""

from __future__ import annotations

import cmath
import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateRootError, DomainError, NumericalFailure, RootCountError
from .model import ShellModel, jost_coefficients, jost_j2, jost_j2_derivative

__all__ = [
    "ResonancePole",
    "SearchRegion",
    "find_poles",
    "locate_poles",
    "winding_number",
    "residue_at_pole",
    "zeldovich_norm",
    "make_pole",
]

logger = logging.getLogger(__name__)

MAX_NEWTON_ITER = 100
MIN_DERIVATIVE = 1e-10
RESIDUAL_FLOOR = 1e-13
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ResonancePole:
    """
    One resonance pole k_n = alpha_n - i beta_n.

    Attributes
    ----------
    n : int
        1-based index, ordered by increasing Re k.
    k : complex
        Pole wavenumber (Re k > 0, Im k < 0).
    z : complex
        Complex energy hbar^2 k^2 / (2m) = E_n - i Gamma_n / 2.
    N_squared : complex
        Zeldovich normalization N_n^2 = i * residue.
    residue : complex
        k-plane residue of S(q) at q = k_n.
    residual : float
        |J2(k_n)| after polishing.
    N : complex
        Normalization constant. Defaults to the principal square root of
        ``N_squared``; observables only depend on |N|^2.
    """

    n: int
    k: complex
    z: complex
    N_squared: complex
    residue: complex
    residual: float = 0.0
    N: complex = field(default=None)

    def __post_init__(self):
        if self.N is None:
            object.__setattr__(self, "N", cmath.sqrt(self.N_squared))

    @property
    def alpha(self) -> float:
        return self.k.real

    @property
    def beta(self) -> float:
        return -self.k.imag

    @property
    def E_R(self) -> float:
        return self.z.real

    @property
    def gamma_R(self) -> float:
        """S-matrix width, -2 Im z."""
        return -2.0 * self.z.imag


@dataclass(frozen=True)
class SearchRegion:
    """Rectangle of the lower-half k-plane, with a scan density per unit Re k."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float = 0.0
    grid_density: float = 40.0 / math.pi

    def __post_init__(self):
        if not (0 <= self.re_min < self.re_max):
            raise DomainError("search region needs 0 <= re_min < re_max")
        if not (self.im_min < self.im_max <= 0):
            raise DomainError("search region needs im_min < im_max <= 0")
        if self.grid_density <= 0:
            raise DomainError("grid density must be positive")

    @classmethod
    def default(cls, model: ShellModel, count: int) -> "SearchRegion":
        """Re(k a) in (0, (count+1) pi), Im(k a) in (-pi, 0), 40 samples per pi."""
        a = model.a
        return cls(0.0, (count + 1) * math.pi / a, -math.pi / a, 0.0, 40.0 * a / math.pi)

    def contains(self, k: complex) -> bool:
        return (self.re_min < k.real < self.re_max) and (self.im_min < k.imag < self.im_max)


def residue_at_pole(model: ShellModel, k_pole: complex) -> complex:
    """k-plane residue of S at a simple zero of J2: -J1(k_n) / J2'(k_n)."""
    d = jost_j2_derivative(model, k_pole)
    if abs(d) < MIN_DERIVATIVE:
        raise DegenerateRootError(f"|J2'| = {abs(d):.3e} at k = {k_pole}; root is not simple",
                                  best=k_pole)
    j1, _ = jost_coefficients(model, k_pole)
    return -j1 / d


def zeldovich_norm(residue: complex) -> complex:
    """N^2 = i * residue. A vanishing residue is flagged: a pole must have one."""
    if residue == 0:
        warnings.warn("zero residue: not a valid simple pole", RuntimeWarning, stacklevel=2)
    return 1j * complex(residue)


def make_pole(model: ShellModel, k: complex, n: int = 1) -> ResonancePole:
    """Assemble a ResonancePole from an already polished root of J2."""
    k = complex(k)
    res = residue_at_pole(model, k)
    return ResonancePole(
        n=n,
        k=k,
        z=complex(model.energy(k)),
        N_squared=zeldovich_norm(res),
        residue=res,
        residual=abs(jost_j2(model, k)),
    )


def _residual_tol(model: ShellModel, k: complex, deriv: complex) -> float:
    # |J2| cannot drop below |J2'| times the spacing of floats around k
    return max(RESIDUAL_FLOOR, 4.0 * _EPS * abs(k) * abs(deriv))


def _newton(model: ShellModel, k0: complex, bounds) -> complex | None:
    """Polish a seed. Returns None if the iterate escapes ``bounds``."""
    re_lo, re_hi, im_lo, im_hi = bounds
    k = complex(k0)
    best, best_res = k, abs(jost_j2(model, k))
    for _ in range(MAX_NEWTON_ITER):
        if k == 0:
            return None
        f = jost_j2(model, k)
        d = jost_j2_derivative(model, k)
        res = abs(f)
        if res < best_res:
            best, best_res = k, res
        if d == 0:
            return None
        if res <= _residual_tol(model, k, d):
            # one extra step, kept only if it does not make things worse
            k2 = k - f / d
            return k2 if abs(jost_j2(model, k2)) <= res else k
        step = f / d
        k = k - step
        if not (re_lo <= k.real <= re_hi and im_lo <= k.imag <= im_hi):
            return None
    raise NumericalFailure(f"Newton polishing did not converge in {MAX_NEWTON_ITER} "
                           f"iterations (best |J2| = {best_res:.3e})", best=best)


def _grid_minima(model: ShellModel, region: SearchRegion, density: float):
    nx = max(int(math.ceil((region.re_max - region.re_min) * density)) + 1, 3)
    ny = max(int(math.ceil((region.im_max - region.im_min) * density)) + 1, 3)
    xs = np.linspace(region.re_min, region.re_max, nx)
    ys = np.linspace(region.im_min, region.im_max, ny)
    K = xs[None, :] + 1j * ys[:, None]
    A = np.abs(jost_j2(model, K))
    padded = np.pad(A, 1, constant_values=np.inf)
    is_min = np.ones_like(A, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            shifted = padded[1 + di:1 + di + ny, 1 + dj:1 + dj + nx]
            is_min &= A <= shifted
    iy, ix = np.nonzero(is_min)
    return [complex(K[i, j]) for i, j in zip(iy, ix)]


def winding_number(model: ShellModel, region: SearchRegion, max_depth: int = 60) -> int:
    """
    Number of zeros of J2 inside ``region`` by the argument principle.

    The boundary is traversed counterclockwise; segments are bisected until
    the phase increment of J2 across each is below pi/4.
    """
    corners = [complex(region.re_min, region.im_min), complex(region.re_max, region.im_min),
               complex(region.re_max, region.im_max), complex(region.re_min, region.im_max)]
    total = 0.0
    for p, q in zip(corners, corners[1:] + corners[:1]):
        n0 = max(int(math.ceil(abs(q - p) * region.grid_density)), 4)
        nodes = p + (q - p) * np.linspace(0.0, 1.0, n0 + 1)
        vals = jost_j2(model, nodes)
        if np.any(vals == 0):
            raise NumericalFailure("J2 vanishes on the search-region boundary")
        for i in range(n0):
            total += _phase_change(model, nodes[i], nodes[i + 1], vals[i], vals[i + 1], max_depth)
    w = total / (2.0 * math.pi)
    if abs(w - round(w)) > 0.1:
        raise NumericalFailure(f"argument principle gave non-integer winding {w:.4f}", best=w)
    return int(round(w))


def _phase_change(model, p, q, fp, fq, depth):
    d = cmath.phase(fq / fp)
    if abs(d) <= math.pi / 4 or depth == 0:
        if depth == 0:
            logger.warning("winding: subdivision depth exhausted near k=%s", p)
        return d
    mid = 0.5 * (p + q)
    fm = jost_j2(model, mid)
    if fm == 0:
        raise NumericalFailure("J2 vanishes on the search-region boundary", best=mid)
    return (_phase_change(model, p, mid, fp, fm, depth - 1)
            + _phase_change(model, mid, q, fm, fq, depth - 1))


def _dedupe(roots, scale):
    out = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        if all(abs(r - o) > 1e-8 * max(scale, abs(r)) for o in out):
            out.append(r)
    return out


def locate_poles(model: ShellModel, region: SearchRegion, refinements: int = 3):
    """
    All resonance poles strictly inside ``region``, ordered by Re k.

    The scan density is doubled (up to ``refinements`` times) until the
    number of roots matches the argument-principle count.
    """
    expected = winding_number(model, region)
    width = region.re_max - region.re_min
    height = region.im_max - region.im_min
    bounds = (region.re_min - width, region.re_max + width,
              region.im_min - height, region.im_max + height)
    density = region.grid_density
    for _ in range(refinements + 1):
        roots = []
        for seed in _grid_minima(model, region, density):
            k = _newton(model, seed, bounds)
            if k is not None and region.contains(k):
                roots.append(k)
        roots = _dedupe(roots, scale=1.0 / model.a)
        if len(roots) == expected:
            break
        logger.info("found %d roots, winding says %d; refining scan", len(roots), expected)
        density *= 2.0
    else:
        raise NumericalFailure(
            f"root enumeration incomplete: found {len(roots)}, argument principle gives {expected}",
            best=roots)
    return [make_pole(model, k, n=i + 1) for i, k in enumerate(roots)]


def find_poles(model: ShellModel, region: SearchRegion | None = None,
               count: int = 5) -> list[ResonancePole]:
    """
    The first ``count`` resonance poles in ``region`` ordered by increasing Re k.

    Parameters
    ----------
    model : ShellModel
    region : SearchRegion, optional
        Defaults to ``SearchRegion.default(model, count)``.
    count : int
        Number of poles wanted (>= 1).

    Raises
    ------
    RootCountError
        The region holds fewer than ``count`` poles.
    NumericalFailure
        Newton polishing failed or enumeration could not be completed.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if region is None:
        region = SearchRegion.default(model, count)
    poles = locate_poles(model, region)
    if len(poles) < count:
        raise RootCountError(f"found {len(poles)} poles in the search region, "
                             f"{count} requested", found=len(poles), requested=count)
    return poles[:count]
