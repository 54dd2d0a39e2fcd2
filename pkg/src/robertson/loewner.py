"""The explicit Loewner chain built from a Robertson function.

For ``f`` and ``lam`` the chain is

    f_t(z) = f(u) - e^{-2 i lam} (e^t - e^{-t}) z f'(u),     u = e^{-t} z,

with ``f_0 = f``.  Its transition function ``p_t = (d f_t/dt) / (z f_t')``
must have positive real part; :func:`chain_eval` returns it from exact
derivatives of the formula above.  The module also carries the two disk
lemmas the argument rests on.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

import numpy as np

from .analytic import FunctionSpec, _jet_unchecked
from .errors import DegenerateError, DomainError, PreconditionError
from .grid import GridSpec, MembershipReport, as_grid, min_report

__all__ = [
    "DEFAULT_T_VALUES",
    "ChainSample",
    "chain_eval",
    "chain_positivity_report",
    "eq43_lhs",
    "eq43_report",
    "chain_samples_csv",
    "CaratheodorySpec",
    "herglotz_disk_check",
    "lemma_b_check",
]

DEFAULT_T_VALUES = (0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class ChainSample:
    """One evaluation of the chain; fields may be arrays of a common shape."""

    t: float
    z: Any
    f_t: Any
    df_dt: Any
    df_dz: Any
    p: Any


def _chain_terms(f: FunctionSpec, lam: float, t: float, z):
    z = np.asarray(z, dtype=complex)
    et, emt = math.exp(t), math.exp(-t)
    sh, ch = et - emt, et + emt
    E = np.exp(-2j * lam)
    u = emt * z
    jet = _jet_unchecked(f, u)
    f0, f1, f2 = np.asarray(jet.v0), np.asarray(jet.v1), np.asarray(jet.v2)
    f_t = f0 - E * sh * z * f1
    df_dt = -u * f1 - E * (ch * z * f1 - sh * z * u * f2)
    df_dz = emt * f1 - E * sh * (f1 + emt * z * f2)
    return z, f_t, df_dt, df_dz, E, et, emt, sh, ch


def chain_eval(f: FunctionSpec, lam: float, t: float, z) -> ChainSample:
    """Evaluate ``f_t``, its ``t``- and ``z``-derivatives and ``p_t`` at ``z``.

    ``z`` may be any point with ``|e^{-t} z| < 1`` (for ``t = 0`` that is the
    open disk).  At ``z = 0`` ``p_t`` takes its limit value
    ``(-e^{-t} - E(e^t + e^{-t})) / (e^{-t} - E(e^t - e^{-t}))``,
    ``E = e^{-2 i lam}``, using ``f'(0) = 1``.
    """
    if not abs(lam) < math.pi / 2:
        raise DomainError("chain_eval requires |lambda| < pi/2")
    if t < 0:
        raise DomainError("chain_eval requires t >= 0")
    if np.any(np.abs(np.asarray(z)) * math.exp(-t) >= 1):
        raise DomainError("chain_eval requires |e^{-t} z| < 1")
    z, f_t, df_dt, df_dz, E, et, emt, sh, ch = _chain_terms(f, lam, t, z)
    at0 = z == 0
    denom = z * df_dz
    bad = (denom == 0) & ~at0
    if np.any(bad):
        raise DegenerateError("z f_t'(z) vanishes", np.atleast_1d(z[bad]).tolist())
    p0 = (-emt - E * ch) / (emt - E * sh)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(at0, p0, df_dt / np.where(at0, 1.0, denom))
    if z.ndim == 0:
        return ChainSample(t, complex(z), complex(f_t), complex(df_dt), complex(df_dz), complex(p))
    return ChainSample(t, z, f_t, df_dt, df_dz, p)


def eq43_lhs(f: FunctionSpec, lam: float, t: float, z):
    """``|e^{-2t} e^{2 i lam} + 1 - (1 - e^{-2t})(1 + u f''(u)/f'(u))|`` with ``u = e^{-t} z``.

    Equals ``|(p_t - 1)/(p_t + 1)|``, so it is below 1 exactly where
    ``Re p_t > 0``.
    """
    if np.any(np.abs(np.asarray(z)) * math.exp(-t) >= 1):
        raise DomainError("eq43_lhs requires |e^{-t} z| < 1")
    z = np.asarray(z, dtype=complex)
    u = math.exp(-t) * z
    jet = _jet_unchecked(f, u)
    v1 = np.asarray(jet.v1)
    if np.any(v1 == 0):
        raise DegenerateError("f'(e^{-t} z) vanishes", np.atleast_1d(u[v1 == 0]).tolist())
    q = 1.0 + u * np.asarray(jet.v2) / v1
    e2t = math.exp(-2.0 * t)
    val = np.abs(e2t * np.exp(2j * lam) + 1.0 - (1.0 - e2t) * q)
    return float(val) if val.ndim == 0 else val


def _sweep(f, lam, t_values, grid, fn):
    z = grid.points()
    vals = []
    for t in t_values:
        try:
            vals.append(fn(f, lam, float(t), z))
        except DegenerateError:
            # non-finite samples are flagged by min_report
            vals.append(np.full(z.shape, np.nan))
    return z, np.stack(vals)


def chain_positivity_report(f: FunctionSpec, lam: float,
                            t_values: Sequence[float] = DEFAULT_T_VALUES,
                            grid: GridSpec | None = None, tol: float = 1e-9) -> MembershipReport:
    """Sweep ``Re p_t(z)`` over ``t_values`` x grid.

    A minimum within ``tol`` of zero is reported as ``pass-boundary``; this is
    what happens at ``|lam| = pi/3``, where ``p_0`` is purely imaginary.
    """
    grid = as_grid(grid)
    z, vals = _sweep(f, lam, t_values, grid, lambda f, lam, t, z: chain_eval(f, lam, t, z).p.real)
    idx = np.unravel_index(np.nanargmin(np.where(np.isnan(vals), np.inf, vals)), vals.shape) \
        if np.any(np.isfinite(vals)) else (0, 0, 0)
    rep = min_report("Re p_t(z)", vals, z[None, :, :], grid, tol, boundary_verdict=True,
                     extras={"lambda": lam, "t_values": [float(t) for t in t_values],
                             "t_at_min": float(t_values[idx[0]])})
    return rep


def eq43_report(f: FunctionSpec, lam: float, t_values: Sequence[float] = DEFAULT_T_VALUES,
                grid: GridSpec | None = None, tol: float = 1e-9) -> MembershipReport:
    """Sweep ``1 - eq43_lhs`` so that the usual ``min > -tol`` rule means ``lhs < 1``.

    ``extras["max_lhs"]`` holds the largest left-hand side seen.
    """
    grid = as_grid(grid)
    z, vals = _sweep(f, lam, t_values, grid, eq43_lhs)
    max_lhs = float(np.nanmax(vals)) if np.any(np.isfinite(vals)) else math.nan
    return min_report("1 - |(p_t - 1)/(p_t + 1)|", 1.0 - vals, z[None, :, :], grid, tol,
                      extras={"lambda": lam, "t_values": [float(t) for t in t_values],
                              "max_lhs": max_lhs})


def chain_samples_csv(f: FunctionSpec, lam: float, t_values: Sequence[float],
                      grid: GridSpec) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "re_z", "im_z", "re_f_t", "im_f_t", "re_p", "im_p", "eq43_lhs"])
    z = grid.points().ravel()
    for t in t_values:
        s = chain_eval(f, lam, float(t), z)
        lhs = eq43_lhs(f, lam, float(t), z)
        for k in range(z.size):
            w.writerow([f"{x:.17g}" for x in (float(t), z[k].real, z[k].imag, s.f_t[k].real,
                                               s.f_t[k].imag, s.p[k].real, s.p[k].imag, lhs[k])])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# functions with positive real part


class PKind(str, Enum):
    ONE = "one"
    MOBIUS = "mobius"
    TAYLOR = "taylor"


@dataclass(frozen=True)
class CaratheodorySpec:
    """An analytic ``p`` with ``p(0) = 1``.

    ``mobius`` is ``(1 + e^{2 i lam} phi z^n) / (1 - phi z^n)``, which maps the
    disk onto the half-plane ``Re e^{-i lam} p > 0``; ``taylor`` is
    ``1 + c_1 z + c_2 z^2 + ...`` with ``coeffs = (c_1, c_2, ...)``.
    """

    kind: PKind
    lam: float = 0.0
    phi: complex = 1 + 0j
    n: int = 1
    coeffs: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", PKind(self.kind))
        object.__setattr__(self, "phi", complex(self.phi))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if self.kind is PKind.MOBIUS and abs(abs(self.phi) - 1) > 1e-12:
            raise DomainError("phi must be unimodular")
        if self.n < 1:
            raise DomainError("n must be positive")

    @classmethod
    def one(cls) -> "CaratheodorySpec":
        return cls(PKind.ONE)

    @classmethod
    def mobius(cls, lam: float = 0.0, phi: complex = 1.0, n: int = 1) -> "CaratheodorySpec":
        return cls(PKind.MOBIUS, lam=lam, phi=phi, n=n)

    @classmethod
    def taylor(cls, coeffs: Sequence[complex]) -> "CaratheodorySpec":
        return cls(PKind.TAYLOR, coeffs=tuple(coeffs))

    @property
    def leading_order(self) -> float:
        """Index of the first nonzero coefficient after the constant (inf for p = 1)."""
        if self.kind is PKind.ONE:
            return math.inf
        if self.kind is PKind.MOBIUS:
            return self.n
        for k, c in enumerate(self.coeffs, start=1):
            if c != 0:
                return k
        return math.inf

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind is PKind.ONE:
            out = np.ones_like(z)
        elif self.kind is PKind.MOBIUS:
            w = self.phi * z**self.n
            out = (1.0 + np.exp(2j * self.lam) * w) / (1.0 - w)
        else:
            out = np.zeros_like(z)
            for c in reversed(self.coeffs):
                out = (out + c) * z
            out = out + 1.0
        return complex(out) if out.ndim == 0 else out


def herglotz_disk_check(p: CaratheodorySpec, lam: float, grid: GridSpec | None = None,
                        tol: float = 1e-9) -> MembershipReport:
    """Check that ``p(z)`` lies in the disk with center ``(1 + r^2 e^{2 i lam})/(1 - r^2)``
    and radius ``2 r cos(lam)/(1 - r^2)``, ``r = |z|``.

    The swept value is ``radius - |p - center|``; ``extras["max_abs_gap"]``
    holds ``max ||p - center| - radius|``, which vanishes for the extremal
    Mobius maps.
    """
    grid = as_grid(grid)
    z = grid.points()
    r2 = np.abs(z) ** 2
    center = (1.0 + r2 * np.exp(2j * lam)) / (1.0 - r2)
    radius = 2.0 * np.sqrt(r2) * math.cos(lam) / (1.0 - r2)
    gap = radius - np.abs(p(z) - center)
    return min_report("radius - |p - center|", gap, z, grid, tol,
                      extras={"lambda": lam, "max_abs_gap": float(np.max(np.abs(gap)))})


def lemma_b_check(p: CaratheodorySpec, n: int, grid: GridSpec | None = None,
                  tol: float = 1e-9) -> MembershipReport:
    """Check ``|p - 1 - 2 rho/(1 - rho)| <= 2 |z|^n/(1 - rho)`` with ``rho = |z|^{2n}``.

    ``p`` must have the form ``1 + a_n z^n + ...``.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if p.leading_order < n:
        raise PreconditionError(
            f"p has a nonzero coefficient of order {p.leading_order} < n = {n}")
    grid = as_grid(grid)
    z = grid.points()
    a = np.abs(z) ** n
    rho = a * a
    center = 1.0 + 2.0 * rho / (1.0 - rho)
    radius = 2.0 * a / (1.0 - rho)
    gap = radius - np.abs(p(z) - center)
    return min_report("radius - |p - 1 - 2 rho/(1 - rho)|", gap, z, grid, tol,
                      extras={"n": n, "max_abs_gap": float(np.max(np.abs(gap)))})
