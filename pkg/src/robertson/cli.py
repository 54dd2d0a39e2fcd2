"""Command-line front end.

Exit codes: 0 success / all pass, 2 a verdict failed, 1 numeric error
(a JSON error record is printed), 64 malformed invocation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .analytic import FunctionSpec, eval_jet
from .classes import equivalence_check, robertson_report, spirallike_report
from .errors import RobertsonError
from .grid import GridSpec, Verdict
from .growth import (boundedness_integral, boundedness_status, cubic_root_x0, envelopes_csv,
                     growth_bounds, royster_mu)
from .loewner import DEFAULT_T_VALUES, chain_positivity_report, chain_samples_csv, eq43_report
from .qcext import HottaParams, dilatation_field, hotta_check
from .svg import polylines_svg

EXIT_OK, EXIT_ERROR, EXIT_FAIL, EXIT_USAGE = 0, 1, 2, 64
COMMANDS = ("check", "growth", "chain", "extend", "hotta", "root", "plot")
SHORTHANDS = ("f_lambda", "P_lambda", "royster", "identity", "halfplane", "koebe")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    function: dict = field(default_factory=lambda: {"kind": "Identity"})
    lam: float = 0.0
    q: float = 0.0
    k: float | None = None
    r_max: float = 0.99
    r_count: int = 40
    n_theta: int = 720
    t_values: list[float] = field(default_factory=lambda: list(DEFAULT_T_VALUES))
    tol: float = 1e-9
    output_dir: str | None = None
    format: str = "json"
    member_class: str = "robertson"
    a: float = 1.0
    b: float = 0.0
    c: list[float] | None = None
    r_out: float = 3.0
    n_r: int = 100
    field_n_theta: int = 360
    fd_step: float = 1e-5
    mu_tol: float = 0.01
    radii: list[float] = field(default_factory=lambda: [0.25, 0.5, 0.75, 0.9, 0.99])
    plot: str = "image"

    def grid(self) -> GridSpec:
        return GridSpec.default(r_max=self.r_max, r_count=self.r_count, n_theta=self.n_theta)

    def spec(self) -> FunctionSpec:
        return FunctionSpec.from_dict(self.function)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not abs(self.lam) < math.pi / 2:
            raise UsageError("--lambda must satisfy |lambda| < pi/2")
        if not 0 < self.r_max < 1:
            raise UsageError("--r-max must lie in (0, 1)")
        if self.n_theta < 8 or self.r_count < 1:
            raise UsageError("--n-theta must be >= 8 and --r-count >= 1")
        if self.format not in ("json", "csv", "svg"):
            raise UsageError("--format must be json, csv or svg")
        if self.k is not None and not 0 <= self.k < 1:
            raise UsageError("--k must lie in [0, 1)")
        if not self.q > -1:
            raise UsageError("--q must exceed -1")
        try:
            self.spec()
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"bad --function: {exc}") from exc


def resolve_function(text: str, lam: float) -> dict:
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--function is not valid JSON: {exc}") from exc
    if text == "f_lambda":
        return FunctionSpec.robertson_extremal(lam).to_dict()
    if text == "P_lambda":
        return FunctionSpec.spirallike_extremal(lam).to_dict()
    if text == "koebe":
        return FunctionSpec.spirallike_extremal(0.0).to_dict()
    if text == "identity":
        return FunctionSpec.identity().to_dict()
    if text == "halfplane":
        return FunctionSpec.half_plane().to_dict()
    if text == "royster":
        return FunctionSpec.royster(royster_mu(lam)).to_dict()
    raise UsageError(f"unknown function shorthand {text!r}; use JSON or one of {SHORTHANDS}")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


def _clean(obj: Any) -> Any:
    """Make ``obj`` JSON-safe: complex -> [re, im], numpy scalars -> python, non-finite -> str."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(float(obj.real)), _clean(float(obj.imag))]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands


def _cmd_check(cfg: RunConfig):
    f, lam, grid = cfg.spec(), cfg.lam, cfg.grid()
    member = (robertson_report if cfg.member_class == "robertson" else spirallike_report)(
        f, lam, grid, cfg.tol)
    eq = equivalence_check(f, lam, grid, cfg.tol)
    ok = member.passed and eq.agree
    payload = {"membership": member.to_dict(), "equivalence": eq.to_dict()}
    return (EXIT_OK if ok else EXIT_FAIL), payload, {}


def _cmd_growth(cfg: RunConfig):
    lam = cfg.lam
    grid = cfg.grid()
    status = boundedness_status(lam)
    series = []
    for m in range(1, 9):
        r = 1.0 - 10.0 ** (-m)
        series.append({"m": m, "r": r, "I": boundedness_integral(lam, r)})
    total = boundedness_integral(lam, 1.0) if status.bounded_by_theorem else None
    envelopes = [asdict(growth_bounds(lam, r)) for r in grid.r_values]
    payload = {"lambda": lam, "status": status.to_dict(), "integral_series": series,
               "integral_at_1": total, "envelopes": envelopes}
    return EXIT_OK, payload, {"envelopes.csv": envelopes_csv(lam, grid.r_values)}


def _cmd_chain(cfg: RunConfig):
    f, lam, grid = cfg.spec(), cfg.lam, cfg.grid()
    pos = chain_positivity_report(f, lam, cfg.t_values, grid, cfg.tol)
    eq = eq43_report(f, lam, cfg.t_values, grid, cfg.tol)
    payload = {"positivity": pos.to_dict(), "eq43": eq.to_dict()}
    files = {}
    if cfg.format == "csv":
        files["chain_samples.csv"] = chain_samples_csv(f, lam, cfg.t_values, grid)
    ok = pos.passed and eq.passed
    return (EXIT_OK if ok else EXIT_FAIL), payload, files


def _cmd_extend(cfg: RunConfig):
    f, lam = cfg.spec(), cfg.lam
    k = cfg.k if cfg.k is not None else 2.0 * math.cos(lam)
    fld = dilatation_field(f, lam, r_out=cfg.r_out, n_r=cfg.n_r, n_theta=cfg.field_n_theta,
                           fd_step=cfg.fd_step)
    summary = fld.summary(k, cfg.mu_tol)
    files = {"dilatation.csv": fld.to_csv()} if cfg.format == "csv" else {}
    return (EXIT_OK if summary["verdict"] == "pass" else EXIT_FAIL), summary, files


def _cmd_hotta(cfg: RunConfig):
    f, lam = cfg.spec(), cfg.lam
    s = complex(cfg.a, cfg.b)
    if cfg.c is None:
        # the instantiation used for q = 0: c + s = 2 s e^{i lam} cos lam
        c = 2.0 * s * np.exp(1j * lam) * math.cos(lam) - s
    else:
        c = complex(cfg.c[0], cfg.c[1])
    k = cfg.k if cfg.k is not None else min(2.0 * math.cos(lam), 0.999999)
    res = hotta_check(f, HottaParams(cfg.a, cfg.b, c, k), cfg.grid(), cfg.tol)
    payload = {"c": c, "k": k, **res.to_dict()}
    return (EXIT_OK if res.verdict is Verdict.PASS else EXIT_FAIL), payload, {}


def _cmd_root(cfg: RunConfig):
    return EXIT_OK, {"x0": cubic_root_x0()}, {}


def _cmd_plot(cfg: RunConfig):
    lam = cfg.lam
    if cfg.plot == "envelope":
        r = np.linspace(0.01, cfg.r_max, 200)
        env = [growth_bounds(lam, x) for x in r]
        lo = r + 1j * np.array([e.psi_lo for e in env])
        hi = r + 1j * np.array([e.psi_hi for e in env])
        svg = polylines_svg([lo, hi], ["psi_lo(r)", "psi_hi(r)"],
                            title=f"growth envelope, lambda={lam:.6g}", equal_aspect=False)
        return EXIT_OK, {"plot": "envelope", "points": len(r)}, {"envelope.svg": svg}
    f = cfg.spec()
    theta = 2.0 * math.pi * np.arange(cfg.n_theta + 1) / cfg.n_theta
    curves = [np.asarray(eval_jet(f, r * np.exp(1j * theta)).v0) for r in cfg.radii]
    svg = polylines_svg(curves, [f"r={r:g}" for r in cfg.radii],
                        title=f"{f.kind.value}, lambda={lam:.6g}")
    return EXIT_OK, {"plot": "image", "radii": cfg.radii}, {"image.svg": svg}


_DISPATCH = {"check": _cmd_check, "growth": _cmd_growth, "chain": _cmd_chain,
             "extend": _cmd_extend, "hotta": _cmd_hotta, "root": _cmd_root, "plot": _cmd_plot}


def run(cfg: RunConfig) -> tuple[int, Any, dict[str, str]]:
    """Execute one command; returns ``(exit code, JSON payload, {filename: text})``."""
    cfg.validate()
    try:
        return _DISPATCH[cfg.command](cfg)
    except (RobertsonError, ArithmeticError, ValueError) as exc:
        return EXIT_ERROR, {"error": type(exc).__name__, "message": str(exc)}, {}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="robertson", description="Verify and visualize lambda-Robertson function facts.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--function", default="identity",
                   help="FunctionSpec JSON or one of: " + ", ".join(SHORTHANDS))
    lam = p.add_mutually_exclusive_group()
    lam.add_argument("--lambda", dest="lam", type=float, help="lambda in radians")
    lam.add_argument("--lambda-deg", dest="lam_deg", type=float, help="lambda in degrees")
    lam.add_argument("--cos-lambda", dest="cos_lam", type=float,
                     help="pick lambda in (0, pi/2) from cos(lambda)")
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--r-max", type=float, default=0.99)
    p.add_argument("--r-count", type=int, default=40)
    p.add_argument("--n-theta", type=int, default=720)
    p.add_argument("--t", default=None, help='comma-separated t values, e.g. "0,0.5,1"')
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None, help="directory for report and artifact files")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    p.add_argument("--class", dest="member_class", choices=("robertson", "spirallike"),
                   default="robertson", help="membership tested by `check`")
    p.add_argument("--a", type=float, default=1.0, help="Re s for `hotta`")
    p.add_argument("--b", type=float, default=0.0, help="Im s for `hotta`")
    p.add_argument("--c", default=None, help='constant c for `hotta` as "re,im"')
    p.add_argument("--r-out", type=float, default=3.0)
    p.add_argument("--n-r", type=int, default=100)
    p.add_argument("--field-n-theta", type=int, default=360)
    p.add_argument("--fd-step", type=float, default=1e-5)
    p.add_argument("--mu-tol", type=float, default=0.01)
    p.add_argument("--radii", default=None, help="comma-separated radii for `plot`")
    p.add_argument("--plot", choices=("image", "envelope"), default="image")
    p.add_argument("--emit-config", action="store_true",
                   help="print the resolved configuration and exit")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.lam_deg is not None:
        lam = math.radians(ns.lam_deg)
    elif ns.cos_lam is not None:
        if not 0 < ns.cos_lam <= 1:
            raise UsageError("--cos-lambda must lie in (0, 1]")
        lam = math.acos(ns.cos_lam)
    else:
        lam = ns.lam if ns.lam is not None else 0.0
    if not abs(lam) < math.pi / 2:
        raise UsageError("lambda must satisfy |lambda| < pi/2")
    function = resolve_function(ns.function, lam)
    cfg = RunConfig(command=ns.command, function=function, lam=lam, q=ns.q, k=ns.k,
                    r_max=ns.r_max, r_count=ns.r_count, n_theta=ns.n_theta, tol=ns.tol,
                    output_dir=ns.out, format=ns.format, member_class=ns.member_class,
                    a=ns.a, b=ns.b, r_out=ns.r_out, n_r=ns.n_r,
                    field_n_theta=ns.field_n_theta, fd_step=ns.fd_step, mu_tol=ns.mu_tol,
                    plot=ns.plot)
    if ns.t is not None:
        cfg.t_values = _floats(ns.t)
    if ns.c is not None:
        c = _floats(ns.c)
        if len(c) != 2:
            raise UsageError('--c expects "re,im"')
        cfg.c = c
    if ns.radii is not None:
        cfg.radii = _floats(ns.radii)
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        cfg.validate()
    except UsageError as exc:
        sys.stderr.write(f"robertson: usage error: {exc}\n")
        return EXIT_USAGE
    except RobertsonError as exc:
        # e.g. no admissible Royster parameter for this lambda
        sys.stdout.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_ERROR
    if ns.emit_config:
        sys.stdout.write(dumps(asdict(cfg)))
        return EXIT_OK
    code, payload, files = run(cfg)
    text = dumps(payload)
    sys.stdout.write(text)
    if cfg.output_dir is not None:
        out = Path(cfg.output_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "report.json").write_text(text)
            (out / "config.json").write_text(dumps(asdict(cfg)))
            for name, body in files.items():
                (out / name).write_text(body)
        except OSError as exc:
            sys.stdout.write(dumps({"error": "OSError", "message": str(exc)}))
            return EXIT_ERROR
    return code


if __name__ == "__main__":
    raise SystemExit(main())
