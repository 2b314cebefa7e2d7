"""
Command-line interface for gamowdecay.

Usage:
    gamowdecay poles --lambda 100 --count 3
    gamowdecay widths --lambda 100 --pole-index 1
    gamowdecay lineshape --lambda 100 --tau 10 --output shape.csv
    gamowdecay branching --lambda 20 --weights 1,1 --form-factor linear --events 10000
    gamowdecay survival --lambda 100 --points 51

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure. Nothing is
written to the output when a command fails.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import sys
from dataclasses import dataclass

import numpy as np

from .branching import FORM_FACTORS, ChannelSpec, branching_fractions
from .errors import GamowError, NumericalFailure
from .model import ShellModel
from .poles import SearchRegion, find_poles
from .widths import (LINESHAPE_POINTS, decay_density_at_time, lineshape, survival_probability,
                     width_report)
from .numerics import QuadratureSpec

__all__ = ["main", "build_parser", "RunConfig"]

logger = logging.getLogger("gamowdecay")


class UsageError(GamowError, ValueError):
    """Invalid command-line input (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    model: ShellModel
    pole_index: int = 1
    pole_count: int = 5
    rel_tol: float = 1e-9
    points: int = LINESHAPE_POINTS
    fmt: str = "json"
    output: str | None = None


def fmt_float(x: float) -> str:
    """17 significant digits: round-trips every double exactly."""
    return format(float(x), ".17g")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _model_from_args(args) -> ShellModel:
    quad = [args.g, args.a, args.m, args.hbar]
    given = [v is not None for v in quad]
    if args.lam is not None and any(given):
        raise UsageError("give either --lambda or all of --g --a --m --hbar, not both")
    if args.lam is None:
        if not all(given):
            raise UsageError("--lambda is required unless --g, --a, --m and --hbar are all given")
        model = ShellModel(a=args.a, g=args.g, m=args.m, hbar=args.hbar)
    else:
        if not math.isfinite(args.lam):
            raise UsageError("lambda must be finite")
        if args.lam == 0:
            raise UsageError("coupling must be nonzero")
        model = ShellModel.from_lambda(args.lam)
    if model.g < 0:
        logger.warning("attractive shell (g < 0): bound-state poles on the positive imaginary "
                       "axis lie outside the resonance search region")
    return model


def _config(args) -> RunConfig:
    if args.pole_index < 1:
        raise UsageError("--pole-index must be >= 1")
    if not args.rel_tol > 0:
        raise UsageError("--rel-tol must be positive")
    return RunConfig(
        model=_model_from_args(args),
        pole_index=args.pole_index,
        pole_count=getattr(args, "count", 5),
        rel_tol=args.rel_tol,
        points=getattr(args, "points", LINESHAPE_POINTS),
        fmt=getattr(args, "format", "json"),
        output=args.output,
    )


def _pole(cfg: RunConfig):
    n = cfg.pole_index
    return find_poles(cfg.model, SearchRegion.default(cfg.model, n), n)[n - 1]


def _quad(cfg: RunConfig, pole) -> QuadratureSpec:
    return QuadratureSpec(peak_center=pole.E_R, peak_width=pole.gamma_R, rel_tol=cfg.rel_tol)


def cmd_poles(cfg: RunConfig) -> str:
    if cfg.pole_count < 1:
        raise UsageError("--count must be >= 1")
    poles = find_poles(cfg.model, count=cfg.pole_count)
    records = [
        {"n": p.n, "k_re": p.k.real, "k_im": p.k.imag, "E_R": p.E_R, "Gamma_R": p.gamma_R,
         "N_sq_re": p.N_squared.real, "N_sq_im": p.N_squared.imag, "residual": p.residual}
        for p in poles
    ]
    if cfg.fmt == "csv":
        header = list(records[0])
        return _csv(header, ([r[h] for h in header] for r in records))
    return _json(records)


def cmd_lineshape(cfg: RunConfig, tau: float | None = None) -> str:
    if cfg.points < 2:
        raise UsageError("--points must be >= 2")
    if tau is not None and not tau >= 0:
        raise UsageError("--tau must be non-negative")
    pole = _pole(cfg)
    sample = lineshape(cfg.model, pole, points=cfg.points, tau=tau)
    cols = [sample.energies, sample.d_gamma_bar_dE, sample.d_gamma_dE]
    header = ["E", "dGammaBar_dE", "dGamma_dE"]
    if tau is not None:
        cols.append(sample.d_p_tau_dE)
        header.append("dP_dE@tau")
    rows = (tuple(float(c[i]) for c in cols) for i in range(len(sample.energies)))
    if cfg.fmt == "json":
        out = {"tau": tau, "E_R": pole.E_R, "Gamma_R": pole.gamma_R}
        out.update({h: [float(v) for v in c] for h, c in zip(header, cols)})
        return _json(out)
    return _csv(header, rows)


def cmd_widths(cfg: RunConfig) -> str:
    pole = _pole(cfg)
    r = width_report(cfg.model, pole, _quad(cfg, pole))
    return _json({
        "gamma_R": r.gamma_R,
        "gamma_bar": r.gamma_bar,
        "gamma_dimensionless": r.gamma_dimensionless,
        "sharp_approx": r.sharp_approx,
        "golden_rule": r.golden_rule,
        "energy_norm": r.energy_norm,
        "quad_error": r.quad_error,
    })


def _parse_weights(text: str) -> tuple:
    try:
        weights = tuple(float(w) for w in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse --weights {text!r}") from None
    if len(weights) < 2:
        raise UsageError("--weights needs at least two comma-separated values")
    return weights


def cmd_branching(cfg: RunConfig, weights: tuple, events: int = 0,
                  form_factor: str = "none") -> str:
    if events < 0:
        raise UsageError("--events must be non-negative")
    pole = _pole(cfg)
    factors = FORM_FACTORS[form_factor](pole.E_R, len(weights))
    spec = ChannelSpec(weights, form_factors=factors, form_factor_name=form_factor)
    r = branching_fractions(cfg.model, pole, spec, _quad(cfg, pole), N0=events)
    return _json({
        "channel_model": r.channel_model,
        "form_factor": form_factor,
        "weights": list(spec.weights),
        "partial_widths": list(r.partial_widths),
        "partial_constants": list(r.partial_constants),
        "fractions_exact": list(r.fractions_exact),
        "fractions_sharp": list(r.fractions_sharp),
        "fractions_constants": list(r.fractions_constants),
        "expected_counts": list(r.expected_counts),
        "N0": r.N0,
    })


def cmd_survival(cfg: RunConfig, tau_max: float | None = None) -> str:
    if cfg.points < 2:
        raise UsageError("--points must be >= 2")
    pole = _pole(cfg)
    if tau_max is None:
        tau_max = 5.0 * cfg.model.hbar / pole.gamma_R
    if not tau_max > 0:
        raise UsageError("--tau-max must be positive")
    taus = np.linspace(0.0, tau_max, cfg.points)
    p_s = survival_probability(cfg.model, pole, taus)
    dens = decay_density_at_time(cfg.model, pole, pole.E_R, taus)
    header = ["tau", "p_s", "dP_dE_at_E_R"]
    if cfg.fmt == "json":
        return _json({"E_R": pole.E_R, "Gamma_R": pole.gamma_R, "tau": [float(t) for t in taus],
                      "p_s": [float(p) for p in p_s], "dP_dE_at_E_R": [float(d) for d in dens]})
    return _csv(header, ((float(t), float(p), float(d)) for t, p, d in zip(taus, p_s, dens)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamowdecay",
        description="Gamow states of the delta-shell potential: poles, widths, branching.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, help="dimensionless coupling 2mga/hbar^2")
    common.add_argument("--g", type=float, help="coupling strength (with --a --m --hbar)")
    common.add_argument("--a", type=float, help="shell radius")
    common.add_argument("--m", type=float, help="mass")
    common.add_argument("--hbar", type=float, help="reduced Planck constant")
    common.add_argument("--pole-index", type=int, default=1)
    common.add_argument("--rel-tol", type=float, default=1e-9)
    common.add_argument("--output", "-o", help="output file (default: standard output)")

    p = sub.add_parser("poles", parents=[common], help="list resonance poles")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("lineshape", parents=[common], help="differential widths on an energy grid")
    p.add_argument("--points", type=int, default=LINESHAPE_POINTS)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    sub.add_parser("widths", parents=[common], help="total widths and decay constant")

    p = sub.add_parser("branching", parents=[common], help="partial widths and branching fractions")
    p.add_argument("--weights", required=True, help="comma-separated channel weights c_j")
    p.add_argument("--events", type=int, default=0, help="N0 for expected event counts")
    p.add_argument("--form-factor", choices=sorted(FORM_FACTORS), default="none")

    p = sub.add_parser("survival", parents=[common], help="survival law and decay density at E_R")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--tau-max", type=float, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _run(args) -> str:
    cfg = _config(args)
    if args.command == "poles":
        return cmd_poles(cfg)
    if args.command == "lineshape":
        return cmd_lineshape(cfg, args.tau)
    if args.command == "widths":
        return cmd_widths(cfg)
    if args.command == "branching":
        return cmd_branching(cfg, _parse_weights(args.weights), args.events, args.form_factor)
    if args.command == "survival":
        return cmd_survival(cfg, args.tau_max)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        text = _run(args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (GamowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
