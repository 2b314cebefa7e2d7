"""
Partial widths, partial decay constants and branching fractions.

The channel structure of <E, j|V|z_R> is not fixed by the single-channel
delta shell. This module uses a weighted-channel model

    <E, j|V|z_R> = c_j f_j(E) <E|V|z_R>

with non-negative weights c_j and optional energy form factors f_j (default
f_j = 1). Without form factors the exact and sharp branching fractions
coincide identically, because the energy dependence cancels in the ratios;
a non-trivial form factor is needed to make them differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateChannelError, DomainError, NumericalFailure
from .model import ShellModel, matrix_element
from .numerics import QuadratureSpec, integrate_halfline_k
from .poles import ResonancePole
from .widths import _k_weight, default_quadrature

__all__ = [
    "ChannelSpec",
    "BranchingReport",
    "FORM_FACTORS",
    "linear_form_factors",
    "channel_matrix_element",
    "partial_decay_constant",
    "partial_width",
    "branching_fractions",
    "expected_event_counts",
]

CHANNEL_MODEL = "weighted-channel: <E,j|V|z_R> = c_j f_j(E) <E|V|z_R>"


@dataclass(frozen=True)
class ChannelSpec:
    """
    Decay-mode weights c_j and optional per-channel form factors f_j(E).

    ``normalized=True`` asserts sum(c_j^2) == 1 (to 1e-12).
    """

    weights: tuple
    normalized: bool = False
    form_factors: tuple | None = field(default=None, compare=False)
    form_factor_name: str = "none"

    def __post_init__(self):
        w = tuple(float(c) for c in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2:
            raise DomainError("at least two decay channels are required")
        if any(not math.isfinite(c) or c < 0 for c in w):
            raise DomainError("channel weights must be finite and non-negative")
        if self.normalized and abs(math.fsum(c * c for c in w) - 1.0) > 1e-12:
            raise DomainError("weights flagged normalized but sum of squares != 1")
        if self.form_factors is not None and len(self.form_factors) != len(w):
            raise DomainError("need one form factor per channel")

    @classmethod
    def normalize(cls, weights: Sequence[float], **kwargs) -> "ChannelSpec":
        """Rescale ``weights`` to unit sum of squares."""
        norm = math.sqrt(math.fsum(float(c) ** 2 for c in weights))
        if norm == 0:
            raise DegenerateChannelError("all channel weights are zero")
        return cls(tuple(float(c) / norm for c in weights), normalized=True, **kwargs)

    @property
    def channels(self) -> int:
        return len(self.weights)

    def form_factor(self, j: int) -> Callable | None:
        if self.form_factors is None:
            return None
        return self.form_factors[j - 1]


def linear_form_factors(E_R: float, channels: int = 2) -> tuple:
    """
    Channel 1 flat; channels j >= 2 get f(E) = 2 E / (E + E_R).

    f rises linearly from threshold (f ~ 2 E / E_R), equals 1 at E = E_R
    and saturates at 2. A pure E / E_R amplitude would make the partial
    width diverge: |<E|V|z_R>|^2 E^2 / L(E) ~ E^{-1/2} at large E.
    """
    if not E_R > 0:
        raise DomainError("linear form factor needs E_R > 0")

    def lin(E):
        E = np.asarray(E, dtype=float)
        return 2.0 * E / (E + E_R)

    return (None,) + (lin,) * (channels - 1)


FORM_FACTORS = {
    "none": lambda E_R, channels: None,
    "linear": linear_form_factors,
}


@dataclass(frozen=True)
class BranchingReport:
    """
    Branching results for one resonance.

    ``fractions_constants`` are the ratios of partial decay constants; they
    are identical to ``fractions_exact`` by construction.
    """

    partial_widths: tuple
    partial_constants: tuple
    fractions_exact: tuple
    fractions_sharp: tuple
    fractions_constants: tuple
    expected_counts: tuple
    N0: int
    channel_model: str = CHANNEL_MODEL


def _check_channel(spec: ChannelSpec, j: int):
    if not (1 <= j <= spec.channels):
        raise DomainError(f"channel {j} out of range 1..{spec.channels}")


def channel_matrix_element(model: ShellModel, pole: ResonancePole, spec: ChannelSpec,
                           j: int, E):
    """<E, j|V|z_R> = c_j f_j(E) <E|V|z_R>."""
    _check_channel(spec, j)
    out = spec.weights[j - 1] * matrix_element(model, pole, E)
    ff = spec.form_factor(j)
    if ff is not None:
        out = out * ff(E)
    return out


def _channel_shape(model, pole, ff, quad):
    """int |f(E) <E|V|z_R>|^2 / L(E) dE with unit channel weight."""
    h = model.hbar2_2m

    def integrand(k):
        base = _k_weight(model, pole, k)
        if ff is None:
            return base
        return base * np.abs(ff(h * np.asarray(k, dtype=float) ** 2)) ** 2

    return integrate_halfline_k(integrand, quad, h).value


def partial_decay_constant(model: ShellModel, pole: ResonancePole, spec: ChannelSpec, j: int,
                           quad: QuadratureSpec | None = None) -> float:
    """
    Gamma_j = P_j = int_0^inf |<E,j|V|z_R>|^2 / L(E) dE.

    The weight c_j^2 is applied after the quadrature, so the adaptive
    refinement does not depend on the overall scale of the weights.
    """
    _check_channel(spec, j)
    quad = default_quadrature(pole) if quad is None else quad
    c = spec.weights[j - 1]
    if c == 0:
        return 0.0
    return c * c * _channel_shape(model, pole, spec.form_factor(j), quad)


def partial_width(model: ShellModel, pole: ResonancePole, spec: ChannelSpec, j: int,
                  quad: QuadratureSpec | None = None) -> float:
    """GammaBar_j = int_0^inf Gamma_R |<E,j|V|z_R>|^2 / L(E) dE."""
    return pole.gamma_R * partial_decay_constant(model, pole, spec, j, quad)


def _ratios(values: Sequence[Fraction]) -> tuple:
    """
    Exact ratios x_j / sum(x), rounded to float, with the largest entry
    nudged by the fewest ulps that make the sum exactly 1.

    The correctly rounded sum (math.fsum) is always brought to 1. A plain
    left-to-right sum() is also 1 whenever some nudge within 64 ulps
    achieves it; with three or more channels the sequential roundings can
    step over 1.0 for every single-entry nudge, and then only fsum is exact.
    """
    total = sum(values, Fraction(0))
    if total == 0:
        raise DegenerateChannelError("all channels have zero strength")
    out = [float(v / total) for v in values]
    big = max(range(len(out)), key=lambda i: out[i])
    candidates = [out[big]]
    up = down = out[big]
    for _ in range(64):
        up = math.nextafter(up, math.inf)
        down = math.nextafter(down, -math.inf)
        candidates += [up, down]
    fallback = None
    for cand in candidates:
        out[big] = cand
        if math.fsum(out) == 1.0:
            if sum(out) == 1.0:
                return tuple(out)
            if fallback is None:
                fallback = cand
    if fallback is None:
        raise NumericalFailure("could not round branching fractions to a unit sum", best=out)
    out[big] = fallback
    return tuple(out)


def branching_fractions(model: ShellModel, pole: ResonancePole, spec: ChannelSpec,
                        quad: QuadratureSpec | None = None, N0: int = 0) -> BranchingReport:
    """
    Partial widths/constants and branching fractions of ``pole``.

    The partial decay constants are integrated once per channel; partial
    widths are Gamma_R times those. Fractions from widths and from constants
    are formed from the exact products, so the common Gamma_R cancels
    without rounding and both routes agree bit for bit.

    Raises
    ------
    DegenerateChannelError
        Every weight is zero.
    """
    if all(c == 0 for c in spec.weights):
        raise DegenerateChannelError("all channel weights are zero")
    quad = default_quadrature(pole) if quad is None else quad
    shapes = {}
    constants = []
    for j, c in enumerate(spec.weights, start=1):
        ff = spec.form_factor(j)
        if c == 0:
            constants.append(0.0)
            continue
        if id(ff) not in shapes:
            shapes[id(ff)] = _channel_shape(model, pole, ff, quad)
        constants.append(c * c * shapes[id(ff)])
    gamma_r = Fraction(pole.gamma_R)
    widths_exact = [gamma_r * Fraction(c) for c in constants]
    fractions_exact = _ratios(widths_exact)
    fractions_constants = _ratios([Fraction(c) for c in constants])
    if fractions_exact != fractions_constants:
        raise NumericalFailure("width-route and constant-route branching fractions disagree")

    sharp = [abs(channel_matrix_element(model, pole, spec, j, pole.E_R)) ** 2
             for j in range(1, spec.channels + 1)]
    fractions_sharp = _ratios([Fraction(s) for s in sharp])

    report = BranchingReport(
        partial_widths=tuple(float(w) for w in widths_exact),
        partial_constants=tuple(constants),
        fractions_exact=fractions_exact,
        fractions_sharp=fractions_sharp,
        fractions_constants=fractions_constants,
        expected_counts=(0,) * spec.channels,
        N0=0,
    )
    if N0:
        report = replace(report, expected_counts=tuple(expected_event_counts(report, N0)),
                         N0=int(N0))
    return report


def expected_event_counts(report: BranchingReport | Sequence[float], N0: int) -> list[int]:
    """
    N_j = N0 * B_j rounded by the largest-remainder method (sum is exactly N0).

    ``report`` may be a BranchingReport or a plain sequence of fractions.
    """
    if N0 < 0 or int(N0) != N0:
        raise DomainError("N0 must be a non-negative integer")
    N0 = int(N0)
    fractions = report.fractions_exact if isinstance(report, BranchingReport) else report
    exact = [Fraction(f) * N0 for f in fractions]
    floors = [math.floor(x) for x in exact]
    short = N0 - sum(floors)
    # largest remainder first, lower channel index breaks ties
    order = sorted(range(len(exact)), key=lambda i: (-(exact[i] - floors[i]), i))
    for i in order[:max(short, 0)]:
        floors[i] += 1
    return floors
