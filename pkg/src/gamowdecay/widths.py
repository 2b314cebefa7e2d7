"""
Single-channel decay observables of a Gamow state.

For a pole z_R = E_R - i Gamma_R/2 and M(E) = <E|V|z_R>:

    dP_tau/dE      = e^{-Gamma_R tau/hbar} |M(E)|^2 / L(E)
    dGammaBar/dE   = Gamma_R |M(E)|^2 / L(E)
    dGamma/dE      = |M(E)|^2 / L(E) = |<E|z_R>|^2
    GammaBar       = int_0^inf dGammaBar/dE dE
    Gamma          = int_0^inf dGamma/dE dE

with the Lorentzian denominator L(E) = (E - E_R)^2 + (Gamma_R/2)^2.

The half-line integrals are done in the wavenumber variable, where the 1/k
of |M|^2 cancels against dE/dk = hbar^2 k / m analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import ShellModel, _pole_strength, _positive_energy, matrix_element, matrix_element_sq
from .numerics import QuadratureResult, QuadratureSpec, integrate_halfline_k
from .poles import ResonancePole

__all__ = [
    "WidthReport",
    "LineshapeSample",
    "default_quadrature",
    "decay_density_at_time",
    "differential_width",
    "differential_decay_constant",
    "gamow_overlap",
    "survival_probability",
    "total_width",
    "total_decay_constant",
    "shape_integral",
    "width_prefactor",
    "gamow_energy_norm",
    "sharp_width_approximation",
    "golden_rule_width",
    "width_report",
    "lineshape",
]

LINESHAPE_POINTS = 2001
LINESHAPE_HALF_SPAN = 12.0


@dataclass(frozen=True)
class WidthReport:
    """Widths of one resonance; energies in model units."""

    gamma_R: float
    gamma_bar: float
    gamma_dimensionless: float
    sharp_approx: float
    golden_rule: float
    energy_norm: float
    quad_error: float


@dataclass(frozen=True)
class LineshapeSample:
    """
    Energy grid with the differential width and decay constant.

    ``d_p_tau_dE`` is only filled when a time ``tau`` was requested.
    """

    energies: np.ndarray
    d_gamma_bar_dE: np.ndarray
    d_gamma_dE: np.ndarray
    tau: float | None = None
    d_p_tau_dE: np.ndarray | None = None


def default_quadrature(pole: ResonancePole, rel_tol: float = 1e-9,
                       abs_tol: float = 1e-14) -> QuadratureSpec:
    """QuadratureSpec centred on the pole's peak."""
    return QuadratureSpec(peak_center=pole.E_R, peak_width=pole.gamma_R,
                          rel_tol=rel_tol, abs_tol=abs_tol)


def _lorentz_denominator(pole: ResonancePole, E):
    return (E - pole.E_R) ** 2 + (0.5 * pole.gamma_R) ** 2


def survival_probability(model: ShellModel, pole: ResonancePole, tau):
    """Exponential survival law e^{-Gamma_R tau / hbar}."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise DomainError("tau must be non-negative")
    return np.exp(-pole.gamma_R * tau / model.hbar)


def decay_density_at_time(model: ShellModel, pole: ResonancePole, E, tau):
    """Probability per unit energy that the state has decayed into |E> by time tau."""
    E = _positive_energy(E)
    return survival_probability(model, pole, tau) * matrix_element_sq(model, pole, E) \
        / _lorentz_denominator(pole, E)


def differential_decay_constant(model: ShellModel, pole: ResonancePole, E):
    """dGamma/dE = |M(E)|^2 / L(E), units 1/energy."""
    E = _positive_energy(E)
    return matrix_element_sq(model, pole, E) / _lorentz_denominator(pole, E)


def differential_width(model: ShellModel, pole: ResonancePole, E):
    """dGammaBar/dE = Gamma_R |M(E)|^2 / L(E), dimensionless."""
    return pole.gamma_R * differential_decay_constant(model, pole, E)


def gamow_overlap(model: ShellModel, pole: ResonancePole, E):
    """<E|z_R> = <E|V|z_R> / (z_R - E)."""
    return matrix_element(model, pole, E) / (pole.z - np.asarray(E, dtype=float))


def width_prefactor(model: ShellModel, pole: ResonancePole) -> float:
    """(2 m g^2 / (pi hbar^2)) |N_n|^2 e^{2 beta_n a}; GammaBar = prefactor * C_n."""
    return model.g**2 / (math.pi * model.hbar2_2m) * _pole_strength(model, pole)


def _k_weight(model: ShellModel, pole: ResonancePole, k):
    """|M(E(k))|^2 dE/dk / L(E(k)) with the 1/k cancelled by hand."""
    k = np.asarray(k, dtype=float)
    E = model.hbar2_2m * k * k
    num = 2.0 * model.g**2 / math.pi * np.sin(k * model.a) ** 2 * _pole_strength(model, pole)
    return num / _lorentz_denominator(pole, E)


def _spec(pole, spec):
    return default_quadrature(pole) if spec is None else spec


def total_decay_constant(model: ShellModel, pole: ResonancePole,
                         spec: QuadratureSpec | None = None) -> QuadratureResult:
    """Gamma = int_0^inf |M|^2 / L dE (dimensionless)."""
    return integrate_halfline_k(lambda k: _k_weight(model, pole, k), _spec(pole, spec),
                                model.hbar2_2m)


def total_width(model: ShellModel, pole: ResonancePole,
                spec: QuadratureSpec | None = None) -> QuadratureResult:
    """GammaBar = int_0^inf Gamma_R |M|^2 / L dE, in energy units."""
    gr = pole.gamma_R
    return integrate_halfline_k(lambda k: gr * _k_weight(model, pole, k), _spec(pole, spec),
                                model.hbar2_2m)


def shape_integral(model: ShellModel, pole: ResonancePole,
                   spec: QuadratureSpec | None = None) -> QuadratureResult:
    """
    C_n = int_0^inf Gamma_n sin^2(ka) / (k L(E)) dE.

    Units energy/k. GammaBar = width_prefactor * C_n.
    """
    gr, a, c = pole.gamma_R, model.a, model.hbar2_2m

    def integrand(k):
        k = np.asarray(k, dtype=float)
        # (1/k) dE/dk = 2 hbar^2/(2m)
        return gr * np.sin(k * a) ** 2 * 2.0 * c / _lorentz_denominator(pole, c * k * k)

    return integrate_halfline_k(integrand, _spec(pole, spec), c)


def gamow_energy_norm(model: ShellModel, pole: ResonancePole,
                      spec: QuadratureSpec | None = None) -> QuadratureResult:
    """
    int_0^inf |<E|z_R>|^2 dE from the complex overlap M(E)/(z_R - E).

    Equals 1 only if the Gamow state were modulus-squared normalized; with
    Zeldovich normalization it generally is not, which is why GammaBar and
    Gamma_R differ. The position-space counterpart int |u(r)|^2 dr diverges
    and is not computed.
    """
    c = model.hbar2_2m
    amp0 = model.g * math.sqrt(2.0 / math.pi) * pole.N * np.exp(1j * pole.k * model.a)

    def integrand(k):
        k = np.asarray(k, dtype=float)
        # M(E) sqrt(dE/dk) with the sqrt(1/k) of chi_0 cancelled
        amp = amp0 * np.sin(k * model.a) / (pole.z - c * k * k)
        return amp.real**2 + amp.imag**2

    return integrate_halfline_k(integrand, _spec(pole, spec), c)


def sharp_width_approximation(model: ShellModel, pole: ResonancePole) -> float:
    """2 pi |<E_R|V|z_R>|^2 (Lorentzian replaced by a delta function)."""
    if not pole.E_R > 0:
        raise DomainError("sharp approximation needs E_R > 0")
    return 2.0 * math.pi * abs(matrix_element(model, pole, pole.E_R)) ** 2


def golden_rule_width(matrix_element_sq: float, density: float) -> float:
    """Golden Rule rate 2 pi |V_fi|^2 rho."""
    if density < 0:
        raise DomainError("density of states must be non-negative")
    return 2.0 * math.pi * matrix_element_sq * density


def width_report(model: ShellModel, pole: ResonancePole,
                 spec: QuadratureSpec | None = None) -> WidthReport:
    """All single-channel widths of ``pole`` in one record."""
    spec = _spec(pole, spec)
    gbar = total_width(model, pole, spec)
    gam = total_decay_constant(model, pole, spec)
    norm = gamow_energy_norm(model, pole, spec)
    m_sq = abs(matrix_element(model, pole, pole.E_R)) ** 2
    return WidthReport(
        gamma_R=pole.gamma_R,
        gamma_bar=gbar.value,
        gamma_dimensionless=gam.value,
        sharp_approx=sharp_width_approximation(model, pole),
        golden_rule=golden_rule_width(m_sq, 1.0),
        energy_norm=norm.value,
        quad_error=gbar.error_estimate,
    )


def lineshape(model: ShellModel, pole: ResonancePole, points: int = LINESHAPE_POINTS,
              tau: float | None = None, energies=None) -> LineshapeSample:
    """
    Sample dGammaBar/dE, dGamma/dE (and dP_tau/dE) on an energy grid.

    The default grid is uniform over [max(0, E_R - 12 Gamma_R), E_R + 12 Gamma_R];
    when it touches the threshold the E = 0 point is dropped.
    """
    if energies is None:
        if points < 2:
            raise DomainError("lineshape needs at least 2 points")
        lo = max(0.0, pole.E_R - LINESHAPE_HALF_SPAN * pole.gamma_R)
        hi = pole.E_R + LINESHAPE_HALF_SPAN * pole.gamma_R
        if lo == 0.0:
            energies = np.linspace(lo, hi, points + 1)[1:]
        else:
            energies = np.linspace(lo, hi, points)
    energies = np.asarray(energies, dtype=float)
    if np.any(np.diff(energies) <= 0):
        raise DomainError("energies must be strictly increasing")
    d_gamma = differential_decay_constant(model, pole, energies)
    d_gamma_bar = pole.gamma_R * d_gamma
    d_p = None
    if tau is not None:
        d_p = decay_density_at_time(model, pole, energies, tau)
    return LineshapeSample(energies, d_gamma_bar, d_gamma, tau, d_p)
