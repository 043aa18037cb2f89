"""Command-line front end.

Exit status is 0 on success, 2 when the arguments do not validate and 1 when
the computation fails (the output then holds an ``{"error": ...}`` record).
Output is deterministic: floats are written with 17 significant digits in CSV
and as shortest round-trip reprs in JSON, rows in input order, no timestamps.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import checks
from . import coherent as cs
from .errors import DiracOscillatorError
from .spectrum import ModelParams, SymmetryLimit, solve_spectrum
from .wavefunctions import RadialState, default_cutoff, eval_R1, eval_R2

COMMANDS = ("spectrum", "sweep", "wavefunction", "coherent", "evolve", "check")
MAX_SWEEP_POINTS = 1_000_000
PARAM_FIELDS = ("alpha", "mu", "w", "A", "lambda", "l", "n")


class ValidationError(ValueError):
    """User input rejected before any computation (exit status 2)."""


@dataclass
class RunConfig:
    command: str
    params: ModelParams | None = None
    limit: SymmetryLimit = SymmetryLimit.SPIN
    output_path: str = "-"
    format: str = "json"
    points: int = 200
    r_max: float | None = None
    xi: tuple = (0.0, 0.0)
    taus: tuple = (0.0,)
    literal: bool = False
    suites: tuple = ("all",)
    tolerances: dict = field(default_factory=dict)
    ranges: dict = field(default_factory=dict)
    c_variant: str = "rederived"
    physical_tol: float = 1e-8

    def echo(self) -> dict:
        out = {"command": self.command, "limit": self.limit.value, "format": self.format}
        if self.command == "sweep":
            out["ranges"] = {k: list(v) for k, v in self.ranges.items()}
        elif self.params is not None:
            out["params"] = self.params.as_dict()
        if self.command in ("wavefunction", "coherent", "evolve"):
            out["points"] = self.points
            out["r_max"] = self.r_max
        if self.command in ("coherent", "evolve"):
            out["xi"] = list(self.xi)
        if self.command == "evolve":
            out["tau"] = list(self.taus)
            out["literal"] = self.literal
        if self.command == "check":
            out["suites"] = list(self.suites)
            out["tolerances"] = dict(sorted(self.tolerances.items()))
        if self.command in ("spectrum", "sweep"):
            out["c_variant"] = self.c_variant
            out["physical_tol"] = self.physical_tol
        return out


# ---------------------------------------------------------------- formatting

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    if value is None:
        return ""
    return str(value)


def _clean(value):
    """JSON-safe copy: complex -> [re, im], non-finite -> {"error": ...}."""
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [_clean(float(value.real)), _clean(float(value.imag))]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else {"error": f"non-finite value {value!r}"}
    return value


def render(config: RunConfig, columns: list, rows: list, extra_meta: dict | None = None) -> str:
    meta = {"tool": "dirac-oscillator", "version": __version__, "config": config.echo()}
    if extra_meta:
        meta.update(extra_meta)
    if config.format == "json":
        body = {"meta": meta, "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(_clean(body), allow_nan=False, indent=1) + "\n"
    buf = io.StringIO()
    buf.write("# " + json.dumps(_clean(meta), allow_nan=False, sort_keys=True) + "\n")
    buf.write("# columns: " + ",".join(columns) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(v) for v in r])
    return buf.getvalue()


# ---------------------------------------------------------------- commands

SPECTRUM_COLUMNS = (list(PARAM_FIELDS) + ["limit", "p", "q", "r"]
                    + [f"root{i}_{part}" for i in range(4) for part in ("re", "im")]
                    + [f"residual{i}" for i in range(4)]
                    + ["accepted", "positive_root", "method", "degenerate", "error"])


def _spectrum_row(params: ModelParams, config: RunConfig) -> list:
    base = [params.alpha, params.mu, params.w, params.A, params.lam, params.l, params.n,
            config.limit.value]
    try:
        sol = solve_spectrum(params, config.limit, config.physical_tol, config.c_variant,
                             raise_on_empty=False)
    except DiracOscillatorError as exc:
        return base + [None] * (len(SPECTRUM_COLUMNS) - len(base) - 1) + [f"{type(exc).__name__}: {exc}"]
    c = sol.coefficients
    roots = [v for z in sol.roots for v in (z.real, z.imag)]
    error = None if sol.physical else "NoPhysicalRoot: every root rejected"
    accepted = ";".join("%.17g" % e for e in sol.accepted) if config.format == "csv" else list(sol.accepted)
    return (base + [c.p, c.q, c.r] + roots + list(sol.residuals)
            + [accepted, sol.positive_root, sol.method, sol.degenerate, error])


def cmd_spectrum(config: RunConfig) -> tuple:
    row = _spectrum_row(config.params, config)
    status = 1 if row[-1] is not None else 0
    return SPECTRUM_COLUMNS, [row], status


def parse_range(text: str, integer: bool = False) -> tuple:
    """``"a,b,c"`` or ``"start:stop:num"`` (inclusive linspace). Empty string -> empty range."""
    text = text.strip()
    if not text:
        return ()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"range {text!r} must be start:stop:num")
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        if num < 0:
            raise ValidationError(f"range {text!r} has negative count")
        values = tuple(float(v) for v in np.linspace(start, stop, num))
    else:
        values = tuple(float(v) for v in text.split(","))
    if not all(math.isfinite(v) for v in values):
        raise ValidationError(f"range {text!r} has non-finite entries")
    if integer:
        if any(v != int(v) for v in values):
            raise ValidationError(f"range {text!r} must contain integers")
        values = tuple(int(v) for v in values)
    return values


def cmd_sweep(config: RunConfig) -> tuple:
    names = list(PARAM_FIELDS)
    rows = []
    for combo in itertools.product(*(config.ranges[k] for k in names)):
        kw = dict(zip(names, combo))
        kw["lam"] = kw.pop("lambda")
        try:
            params = ModelParams(**kw)
        except ValueError as exc:
            row = list(combo) + [config.limit.value]
            row += [None] * (len(SPECTRUM_COLUMNS) - len(row) - 1) + [f"ValueError: {exc}"]
            rows.append(row)
            continue
        rows.append(_spectrum_row(params, config))
    return SPECTRUM_COLUMNS, rows, 0


def _grid(config: RunConfig, state: RadialState) -> np.ndarray:
    r_max = config.r_max or default_cutoff(state.n, state.k, state.delta) / 2.0
    return np.linspace(r_max / config.points, r_max, config.points)


def cmd_wavefunction(config: RunConfig) -> tuple:
    state = RadialState.solve(config.params, config.limit)
    r = _grid(config, state)
    cols = ["r", "R1", "R2"]
    rows = [list(v) for v in zip(r, eval_R1(state, r), eval_R2(state, r))]
    return cols, rows, 0, {"state": {"eps": state.eps, "k": state.k, "delta": state.delta,
                                     "norm": state.norm}}


def _coherent_params(config: RunConfig) -> tuple:
    state = RadialState.solve(config.params.with_n(0), config.limit)
    p = cs.CoherentParams.from_state(state, complex(*config.xi))
    return state, p


def _state_meta(state, p) -> dict:
    return {"state": {"eps": state.eps, "k": state.k, "delta": state.delta},
            "xi": [p.xi.real, p.xi.imag]}


def cmd_coherent(config: RunConfig) -> tuple:
    state, p = _coherent_params(config)
    r = _grid(config, state)
    u, l = cs.coherent_R1_closed(p, r), cs.coherent_R2_closed(p, r)
    cols = ["r", "R1_re", "R1_im", "R2_re", "R2_im"]
    rows = [[ri, a.real, a.imag, b.real, b.imag] for ri, a, b in zip(r, u, l)]
    return cols, rows, 0, _state_meta(state, p)


def cmd_evolve(config: RunConfig) -> tuple:
    state, p0 = _coherent_params(config)
    r = _grid(config, state)
    cols = ["tau", "r", "R1_re", "R1_im", "R2_re", "R2_im"]
    rows = []
    for tau in config.taus:
        p = cs.evolve(p0, tau)
        u = cs.evolved_R1(p, r, literal=config.literal)
        l = cs.evolved_R2(p, r, literal=config.literal)
        rows.extend([tau, ri, a.real, a.imag, b.real, b.imag] for ri, a, b in zip(r, u, l))
    return cols, rows, 0, _state_meta(state, p0)


def cmd_check(config: RunConfig) -> tuple:
    results = checks.run_suites(config.suites, config.tolerances)
    cols = ["suite", "name", "value", "comparison", "bound", "passed"]
    rows = [[c.suite, c.name, c.value, c.comparison, c.bound, c.passed] for c in results]
    status = 0 if all(c.passed for c in results) else 1
    return cols, rows, status, {"lines": [c.line() for c in results]}


HANDLERS = {
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "wavefunction": cmd_wavefunction,
    "coherent": cmd_coherent,
    "evolve": cmd_evolve,
    "check": cmd_check,
}


# ---------------------------------------------------------------- parsing

def _add_params(sp, as_range: bool):
    kind = str if as_range else float
    defaults = {"alpha": "1", "mu": "0", "w": "1", "A": "0", "lambda": "1", "l": "1", "n": "0"}
    for name in PARAM_FIELDS:
        default = defaults[name] if as_range else (int if name == "n" else float)(defaults[name])
        sp.add_argument(f"--{name}", type=(int if name == "n" and not as_range else kind),
                        default=default, dest=name.replace("lambda", "lam"))
    sp.add_argument("--limit", choices=[m.value for m in SymmetryLimit], default="spin")


def _add_output(sp, default_format="json", formats=("csv", "json")):
    sp.add_argument("--format", choices=formats, default=default_format)
    sp.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")


def _add_grid(sp):
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--r-max", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dirac-oscillator",
                                     description="Modified Dirac oscillator spectra, "
                                                 "wavefunctions and coherent states.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("spectrum", "sweep"):
        sp = sub.add_parser(name)
        _add_params(sp, as_range=name == "sweep")
        sp.add_argument("--c-variant", choices=("rederived", "printed"), default="rederived")
        sp.add_argument("--physical-tol", type=float, default=1e-8)
        _add_output(sp, "json" if name == "spectrum" else "csv")

    for name in ("wavefunction", "coherent", "evolve"):
        sp = sub.add_parser(name)
        _add_params(sp, as_range=False)
        _add_grid(sp)
        if name != "wavefunction":
            sp.add_argument("--xi", type=float, nargs=2, metavar=("RE", "IM"), default=(0.0, 0.0))
        if name == "evolve":
            sp.add_argument("--tau", type=float, nargs="+", default=[0.0])
            sp.add_argument("--literal", action="store_true",
                            help="evaluate the printed evolved expression instead of the consistent one")
        _add_output(sp, "csv")

    sp = sub.add_parser("check")
    sp.add_argument("--suite", action="append", default=None,
                    choices=sorted(checks.SUITES) + ["all"])
    sp.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                    help=f"override a tolerance; names: {', '.join(checks.DEFAULT_TOLERANCES)}")
    _add_output(sp, "text", ("text", "csv", "json"))
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, limit=SymmetryLimit.parse(getattr(args, "limit", "spin")),
                    output_path=args.output, format=args.format)
    try:
        if args.command == "sweep":
            cfg.ranges = {name: parse_range(getattr(args, name.replace("lambda", "lam")),
                                            integer=name == "n") for name in PARAM_FIELDS}
            total = math.prod(len(v) for v in cfg.ranges.values())
            if total > MAX_SWEEP_POINTS:
                raise ValidationError(f"sweep has {total} points, limit is {MAX_SWEEP_POINTS}")
        elif args.command != "check":
            cfg.params = ModelParams(args.alpha, args.mu, args.w, args.A, args.lam, args.l, args.n)
        if args.command in ("spectrum", "sweep"):
            cfg.c_variant = args.c_variant
            cfg.physical_tol = args.physical_tol
        if args.command in ("wavefunction", "coherent", "evolve"):
            if args.points < 2:
                raise ValidationError("--points must be at least 2")
            if args.r_max is not None and not args.r_max > 0:
                raise ValidationError("--r-max must be positive")
            cfg.points, cfg.r_max = args.points, args.r_max
        if args.command in ("coherent", "evolve"):
            cfg.xi = tuple(args.xi)
            if not all(math.isfinite(v) for v in cfg.xi) or math.hypot(*cfg.xi) >= 1.0:
                raise ValidationError(f"--xi must satisfy |xi| < 1, got {cfg.xi}")
        if args.command == "evolve":
            cfg.taus, cfg.literal = tuple(args.tau), args.literal
            if not all(math.isfinite(t) for t in cfg.taus):
                raise ValidationError("--tau values must be finite")
        if args.command == "check":
            cfg.suites = tuple(args.suite or ["all"])
            for item in args.tol:
                name, sep, value = item.partition("=")
                if not sep or name not in checks.DEFAULT_TOLERANCES:
                    raise ValidationError(f"bad --tol {item!r}; names: {list(checks.DEFAULT_TOLERANCES)}")
                cfg.tolerances[name] = float(value)
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    return cfg


def run(config: RunConfig) -> tuple:
    """Execute ``config``; returns ``(exit_status, text)``."""
    try:
        result = HANDLERS[config.command](config)
    except DiracOscillatorError as exc:
        record = [[f"{type(exc).__name__}: {exc}"]]
        return 1, render(config, ["error"], record)
    cols, rows, status = result[:3]
    meta = result[3] if len(result) > 3 else None
    if config.command == "check" and config.format == "text":
        return status, "\n".join(meta["lines"]) + "\n"
    return status, render(config, list(cols), rows, meta if config.command != "check" else None)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    status, text = run(config)
    if config.output_path == "-":
        sys.stdout.write(text)
    else:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
