"""
Closed-form quantities of the s-wave delta-shell potential V(r) = g δ(r - a).

Everything here is analytic: free eigenfunctions, the Jost-like coefficients
J1/J2 of the exterior solution, the S-matrix S = -J1/J2, the Gamow
wavefunction of a resonance pole and the matrix element <E|V|z_n>.

Conventions
-----------
- Wavenumbers are complex; a decaying resonance lives in the fourth quadrant,
  k_n = alpha_n - i beta_n with beta_n > 0.
- E = hbar^2 k^2 / (2 m).
- The dimensionless coupling is lambda = 2 m g a / hbar^2. The default unit
  system (``ShellModel.from_lambda``) sets hbar = 2m = a = 1, so lambda = g.

All functions are pure and accept numpy arrays where the argument is a
scalar physical variable (E, r, k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import DomainError, PoleProximityError

if TYPE_CHECKING:
    from .poles import ResonancePole

__all__ = [
    "ShellModel",
    "free_eigenfunction",
    "jost_coefficients",
    "jost_j2",
    "jost_j2_derivative",
    "s_matrix",
    "gamow_wavefunction",
    "matrix_element",
    "matrix_element_sq",
]

# |J2| <= POLE_PROXIMITY * |J1| counts as "on the pole"
POLE_PROXIMITY = 1e-12


@dataclass(frozen=True)
class ShellModel:
    """
    Physical configuration of a delta-shell potential.

    Attributes
    ----------
    a : float
        Shell radius (> 0).
    g : float
        Coupling strength, energy x length (nonzero).
    m : float
        Particle mass (> 0).
    hbar : float
        Reduced Planck constant (> 0).
    """

    a: float = 1.0
    g: float = 1.0
    m: float = 0.5
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("a", "g", "m", "hbar"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.a <= 0 or self.m <= 0 or self.hbar <= 0:
            raise DomainError("a, m and hbar must be positive")
        if self.g == 0:
            raise DomainError("coupling must be nonzero")

    @classmethod
    def from_lambda(cls, lam: float, a: float = 1.0, m: float = 0.5,
                    hbar: float = 1.0) -> "ShellModel":
        """Build a model from the dimensionless coupling lambda = 2mga/hbar^2."""
        return cls(a=a, g=lam * hbar**2 / (2.0 * m * a), m=m, hbar=hbar)

    @property
    def lam(self) -> float:
        """Dimensionless coupling 2 m g a / hbar^2."""
        return 2.0 * self.m * self.g * self.a / self.hbar**2

    @property
    def coupling(self) -> float:
        """2 m g / hbar^2, units 1/length."""
        return 2.0 * self.m * self.g / self.hbar**2

    @property
    def hbar2_2m(self) -> float:
        """hbar^2 / (2 m): converts k^2 to energy."""
        return self.hbar**2 / (2.0 * self.m)

    def kappa(self, E):
        """Real wavenumber sqrt(2 m E) / hbar for E >= 0."""
        return np.sqrt(np.asarray(E, dtype=float) / self.hbar2_2m)

    def energy(self, k):
        """Energy hbar^2 k^2 / (2 m); complex k gives the complex energy."""
        return self.hbar2_2m * np.asarray(k) ** 2


def _positive_energy(E, what="free state requires positive energy"):
    E = np.asarray(E, dtype=float)
    if np.any(~(E > 0)):
        raise DomainError(what)
    return E


def _sin_over_k(k, a):
    """sin(k a)/k, finite at k = 0."""
    k = np.asarray(k, dtype=complex)
    zero = k == 0
    safe = np.where(zero, 1.0, k)
    return np.where(zero, a, np.sin(safe * a) / safe)


def free_eigenfunction(model: ShellModel, E, r):
    """
    Delta-normalized free radial solution chi_0(r; E).

    sqrt((1/pi) (2m/hbar^2) / k) sin(k r), normalized so that
    int chi_0(r;E) chi_0(r;E') dr = delta(E - E').
    """
    E = _positive_energy(E)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be non-negative")
    k = model.kappa(E)
    return np.sqrt((1.0 / np.pi) / (model.hbar2_2m * k)) * np.sin(k * r)


def jost_coefficients(model: ShellModel, k):
    """
    Coefficients (J1, J2) of e^{ikr} and e^{-ikr} in the exterior solution.

    Valid for complex k by analytic continuation. Raises ``DomainError`` at
    k = 0 where the 1/k factor is singular.
    """
    k = np.asarray(k, dtype=complex)
    if np.any(k == 0):
        raise DomainError("Jost coefficients are singular at k = 0")
    ka = k * model.a
    s, c = np.sin(ka), np.cos(ka)
    ck = model.coupling / k
    j1 = 0.5 * np.exp(-1j * ka) * ((1.0 - 1j * ck) * s - 1j * c)
    j2 = 0.5 * np.exp(1j * ka) * ((1.0 + 1j * ck) * s + 1j * c)
    if j1.ndim == 0:
        return complex(j1), complex(j2)
    return j1, j2


def jost_j2(model: ShellModel, k):
    """J2(k) alone; entire in k (finite at k = 0). Zeros are the poles of S."""
    k = np.asarray(k, dtype=complex)
    ka = k * model.a
    bracket = np.sin(ka) + 1j * np.cos(ka) + 1j * model.coupling * _sin_over_k(k, model.a)
    out = 0.5 * np.exp(1j * ka) * bracket
    return complex(out) if out.ndim == 0 else out


def jost_j2_derivative(model: ShellModel, k):
    """Closed-form dJ2/dk."""
    k = np.asarray(k, dtype=complex)
    if np.any(k == 0):
        raise DomainError("closed-form dJ2/dk is evaluated away from k = 0")
    a = model.a
    ka = k * a
    s, c = np.sin(ka), np.cos(ka)
    ck = model.coupling / k
    bracket = (1.0 + 1j * ck) * s + 1j * c
    dbracket = -1j * model.coupling / k**2 * s + (1.0 + 1j * ck) * a * c - 1j * a * s
    phase = np.exp(1j * ka)
    out = 0.5 * phase * (1j * a * bracket + dbracket)
    return complex(out) if out.ndim == 0 else out


def s_matrix(model: ShellModel, k):
    """
    S(k) = -J1(k)/J2(k).

    Raises ``PoleProximityError`` when |J2| <= 1e-12 |J1|, i.e. the caller is
    sitting on a resonance pole.
    """
    j1, j2 = jost_coefficients(model, k)
    j1a, j2a = np.abs(j1), np.abs(j2)
    close = j2a <= POLE_PROXIMITY * j1a
    if np.any(close):
        worst = float(np.min(j2a))
        raise PoleProximityError(f"S-matrix evaluated at a pole (|J2| = {worst:.3e})", worst)
    out = -np.asarray(j1) / np.asarray(j2)
    return complex(out) if np.ndim(out) == 0 else out


def gamow_wavefunction(model: ShellModel, pole: "ResonancePole", r):
    """
    Resonant state u(r; z_n).

    N_n sin(k_n r)/J1(k_n) inside the shell, N_n e^{i k_n r} outside. The
    outer branch is used at r = a (the two agree there when J2(k_n) = 0).
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be non-negative")
    k = pole.k
    j1, _ = jost_coefficients(model, k)
    inner = pole.N * np.sin(k * r) / j1
    outer = pole.N * np.exp(1j * k * r)
    out = np.where(r < model.a, inner, outer)
    return complex(out) if out.ndim == 0 else out


def matrix_element(model: ShellModel, pole: "ResonancePole", E):
    """
    <E|V|z_n> = g chi_0(a; E) u(a; z_n).

    Complex, units 1/sqrt(energy). Depends on the phase convention of N_n;
    only its modulus enters physical observables.
    """
    E = _positive_energy(E)
    k = model.kappa(E)
    amp = model.g * np.sqrt((1.0 / np.pi) / (model.hbar2_2m * k)) * np.sin(k * model.a)
    out = amp * pole.N * np.exp(1j * pole.k * model.a)
    return complex(out) if out.ndim == 0 else out


def matrix_element_sq(model: ShellModel, pole: "ResonancePole", E):
    """|<E|V|z_n>|^2 = (2 m g^2 / (pi k hbar^2)) sin^2(ka) |N_n|^2 e^{2 beta_n a}."""
    E = _positive_energy(E)
    k = model.kappa(E)
    pref = model.g**2 / (np.pi * model.hbar2_2m)
    return pref * np.sin(k * model.a) ** 2 / k * _pole_strength(model, pole)


def _pole_strength(model: ShellModel, pole: "ResonancePole") -> float:
    """|N_n|^2 e^{2 beta_n a}: the only pole-dependent factor in |<E|V|z_n>|^2."""
    return abs(pole.N_squared) * math.exp(2.0 * pole.beta * model.a)
