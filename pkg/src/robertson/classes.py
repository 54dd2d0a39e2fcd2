"""Grid-sweep membership checks for the spirallike, Robertson and convex classes.

Every checker evaluates one of the real functionals

* ``Re e^{-i lam} (z f'/f)``            (lam-spirallike),
* ``Re e^{-i lam} (1 + z f''/f')``      (lam-Robertson; lam = 0 is convexity),

on a :class:`~robertson.grid.GridSpec` and reduces it with
:func:`~robertson.grid.min_report`.  A Fail is a certificate (up to
rounding) that the condition breaks somewhere; a Pass is only evidence on
the sampled points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import FunctionSpec, eval_jet, log_fprime, principal_log, robertson_alpha
from .errors import DomainError, GridTooCoarseError
from .grid import GridSpec, MembershipReport, Verdict, as_grid, min_report

__all__ = [
    "lambda_arg",
    "robertson_functional",
    "spirallike_functional",
    "robertson_report",
    "spirallike_report",
    "EquivalenceResult",
    "equivalence_check",
    "monotone_lambda_arg_check",
]

DEFAULT_TOL = 1e-9
DEFAULT_FD_TOL = 1e-6
# largest accepted phase step between neighbouring samples on a circle
_MAX_PHASE_STEP = 0.75 * math.pi


def _check_lambda(lam: float) -> None:
    if not abs(lam) < math.pi / 2:
        raise DomainError(f"lambda must satisfy |lambda| < pi/2, got {lam}")


def lambda_arg(w, lam: float):
    """The angle ``theta`` in (-pi, pi] with ``w`` on the rotated spiral ``e^{i theta} exp(t e^{i lam})``.

    Writing ``w = e^{i theta} e^{t e^{i lam}}`` gives ``ln|w| = t cos lam`` and
    ``arg w = theta + t sin lam``, hence ``theta = arg w - tan(lam) ln|w|``.
    """
    _check_lambda(lam)
    w = np.asarray(w, dtype=complex)
    if np.any(w == 0):
        raise DomainError("lambda_arg is undefined at w = 0")
    theta = principal_log(w).imag - math.tan(lam) * np.log(np.abs(w))
    theta = theta - 2.0 * math.pi * np.ceil((theta - math.pi) / (2.0 * math.pi))
    return float(theta) if np.ndim(theta) == 0 else theta


def robertson_functional(f: FunctionSpec, lam: float, z):
    """``Re e^{-i lam}(1 + z f''/f')`` and the mask of points where ``f' = 0``."""
    jet = eval_jet(f, z)
    v1 = np.asarray(jet.v1)
    bad = v1 == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        q = 1.0 + np.asarray(z) * np.asarray(jet.v2) / np.where(bad, 1.0, v1)
    return np.real(np.exp(-1j * lam) * q), bad


def spirallike_functional(f: FunctionSpec, lam: float, z):
    """``Re e^{-i lam}(z f'/f)`` with the value ``cos lam`` at the origin.

    The mask marks nonzero points where ``f`` vanishes.
    """
    z = np.asarray(z, dtype=complex)
    jet = eval_jet(f, z)
    v0 = np.asarray(jet.v0)
    at_origin = z == 0
    bad = (v0 == 0) & ~at_origin
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(at_origin | bad, 1.0, z * np.asarray(jet.v1) / np.where(v0 == 0, 1.0, v0))
    return np.real(np.exp(-1j * lam) * q), bad


def robertson_report(f: FunctionSpec, lam: float, grid: GridSpec | None = None,
                     tol: float = DEFAULT_TOL) -> MembershipReport:
    _check_lambda(lam)
    grid = as_grid(grid)
    z = grid.points()
    vals, bad = robertson_functional(f, lam, z)
    return min_report("Re e^{-i lam}(1 + z f''/f')", vals, z, grid, tol, bad,
                      extras={"lambda": lam})


def spirallike_report(f: FunctionSpec, lam: float, grid: GridSpec | None = None,
                      tol: float = DEFAULT_TOL) -> MembershipReport:
    _check_lambda(lam)
    grid = as_grid(grid)
    z = grid.points()
    vals, bad = spirallike_functional(f, lam, z)
    return min_report("Re e^{-i lam}(z f'/f)", vals, z, grid, tol, bad,
                      extras={"lambda": lam})


@dataclass
class EquivalenceResult:
    """Three reports that should share one verdict for any ``f``."""

    robertson: MembershipReport
    derivative_spirallike: MembershipReport
    primitive_convex: MembershipReport

    @property
    def reports(self) -> tuple[MembershipReport, MembershipReport, MembershipReport]:
        return (self.robertson, self.derivative_spirallike, self.primitive_convex)

    @property
    def verdicts(self) -> tuple[Verdict, Verdict, Verdict]:
        return tuple(r.verdict for r in self.reports)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1

    def to_dict(self) -> dict:
        return {
            "robertson": self.robertson.to_dict(),
            "derivative_spirallike": self.derivative_spirallike.to_dict(),
            "primitive_convex": self.primitive_convex.to_dict(),
            "agree": self.agree,
        }


def _primitive_convexity(f: FunctionSpec, lam: float, z: np.ndarray):
    """``Re(1 + z g''/g')`` for ``g = integral f'^alpha``.

    ``g' = exp(alpha log f')`` by the fundamental theorem of calculus; ``g''``
    comes from a five-point central difference of ``g'``.  Neighbouring
    values of ``log f'`` are continued from ``log f'(z)`` through the
    principal log of ``f'(z +- k h) / f'(z)``, which stays near 1.
    """
    alpha = robertson_alpha(lam)
    v1 = np.asarray(eval_jet(f, z).v1)
    bad = v1 == 0
    zs = np.where(bad, 0.0, z)
    base = log_fprime(f, zs)
    h = np.minimum(1e-4, (1.0 - np.abs(zs)) / 4.0)
    v1s = np.where(bad, 1.0, v1)

    def gprime(k: int):
        shifted = eval_jet(f, zs + k * h).v1
        return np.exp(alpha * (base + principal_log(shifted / v1s)))

    g1 = np.exp(alpha * base)
    g2 = (-gprime(2) + 8.0 * gprime(1) - 8.0 * gprime(-1) + gprime(-2)) / (12.0 * h)
    return np.real(1.0 + zs * g2 / g1), bad


def equivalence_check(f: FunctionSpec, lam: float, grid: GridSpec | None = None,
                      tol: float = DEFAULT_TOL) -> EquivalenceResult:
    """Check ``f in R(lam)``, ``z f' in SP(lam)`` and ``integral f'^alpha in K`` side by side."""
    _check_lambda(lam)
    grid = as_grid(grid)
    z = grid.points()
    rob = robertson_report(f, lam, grid, tol)

    jet = eval_jet(f, z)
    h = z * jet.v1
    dh = jet.v1 + z * jet.v2
    bad_h = h == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.real(np.exp(-1j * lam) * z * dh / np.where(bad_h, 1.0, h))
    spiral = min_report("Re e^{-i lam}(z h'/h), h = z f'", vals, z, grid, tol, bad_h,
                        extras={"lambda": lam})

    vals_c, bad_c = _primitive_convexity(f, lam, z)
    convex = min_report("Re(1 + z g''/g'), g = int f'^alpha", vals_c, z, grid, tol, bad_c,
                        extras={"lambda": lam, "alpha": [robertson_alpha(lam).real,
                                                         robertson_alpha(lam).imag]})
    return EquivalenceResult(rob, spiral, convex)


def monotone_lambda_arg_check(f: FunctionSpec, lam: float, grid: GridSpec | None = None,
                              form: str = "direct",
                              tol: float = DEFAULT_FD_TOL) -> MembershipReport:
    """Finite-difference check that the lam-argument increases around each circle.

    ``form="direct"`` tracks ``arg_lam f(r e^{i theta})`` (spirallike case);
    ``form="derivative"`` tracks ``arg_lam of d/dtheta f(r e^{i theta}) = i z f'(z)``
    (Robertson case).
    """
    _check_lambda(lam)
    if form not in ("direct", "derivative"):
        raise ValueError(f"unknown form {form!r}")
    grid = as_grid(grid)
    z = grid.points()
    jet = eval_jet(f, z)
    F = jet.v0 if form == "direct" else 1j * z * jet.v1
    bad = F == 0
    Fs = np.where(bad, 1.0, F)
    step = 2.0 * math.pi / grid.n_theta
    # periodic nearest-branch phase increments between neighbours
    dphase = np.angle(np.roll(Fs, -1, axis=1) / Fs)
    if np.any(np.abs(dphase[~(bad | np.roll(bad, -1, axis=1))]) > _MAX_PHASE_STEP):
        raise GridTooCoarseError(
            f"argument jumps by more than {_MAX_PHASE_STEP:.3f} rad between samples; "
            "increase n_theta")
    logabs = np.log(np.abs(Fs))
    dlog = np.roll(logabs, -1, axis=1) - np.roll(logabs, 1, axis=1)
    darg = dphase + np.roll(dphase, 1, axis=1)
    deriv = (darg - math.tan(lam) * dlog) / (2.0 * step)
    bad_any = bad | np.roll(bad, -1, axis=1) | np.roll(bad, 1, axis=1)
    name = "d/dtheta arg_lam f" if form == "direct" else "d/dtheta arg_lam (d/dtheta f)"
    return min_report(name, deriv, z, grid, tol, bad_any, extras={"lambda": lam, "form": form})
