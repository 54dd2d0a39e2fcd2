"""Quasiconformal extension: thresholds, the Hotta-type criterion, and a measured dilatation.

The extension of ``f`` across the unit circle is read off the Loewner chain,
``F(e^{t + i theta}) = f_t(e^{i theta})``; equivalently, for ``|w| > 1``

    F(w) = f(1/conj(w)) - e^{-2 i lam} (w - 1/conj(w)) f'(1/conj(w)).

Its complex dilatation is measured by central differences rather than taken
from a formula, so a slip in the construction would show up in the numbers.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .analytic import FunctionSpec, _jet_unchecked, eval_jet
from .errors import DegenerateError, DomainError
from .grid import GridSpec, MembershipReport, Verdict, as_grid, min_report

__all__ = [
    "H_s",
    "theorem3_functional",
    "theorem3_condition_report",
    "AdmissibleK",
    "admissible_k",
    "HottaParams",
    "HottaResult",
    "hotta_check",
    "becker_extend",
    "DilatationField",
    "dilatation_field",
]


def H_s(f: FunctionSpec, s: complex, z):
    """``s (1 + z f''/f') + (1 - s) z f'/f``, continued by the value 1 at the origin."""
    z = np.asarray(z, dtype=complex)
    jet = eval_jet(f, z)
    v0, v1, v2 = np.asarray(jet.v0), np.asarray(jet.v1), np.asarray(jet.v2)
    at0 = z == 0
    bad = ((v0 == 0) | (v1 == 0)) & ~at0
    if np.any(bad):
        raise DegenerateError("f or f' vanishes", np.atleast_1d(z[bad]).tolist())
    v0s = np.where(at0, 1.0, v0)
    out = np.where(at0, 1.0, s * (1.0 + z * v2 / v1) + (1.0 - s) * z * v1 / v0s)
    return complex(out) if out.ndim == 0 else out


def theorem3_functional(f: FunctionSpec, lam: float, q: float, z):
    """``Re e^{-i lam}(1 + z f''/f' + q z f'/f)`` (value ``(1 + q) cos lam`` at 0) and a degeneracy mask."""
    z = np.asarray(z, dtype=complex)
    jet = eval_jet(f, z)
    v0, v1, v2 = np.asarray(jet.v0), np.asarray(jet.v1), np.asarray(jet.v2)
    at0 = z == 0
    bad = (v1 == 0) | ((v0 == 0) & ~at0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rob = 1.0 + z * v2 / np.where(v1 == 0, 1.0, v1)
        star = np.where(at0, 1.0, z * v1 / np.where(v0 == 0, 1.0, v0))
    if q == 0:
        total = rob
    else:
        total = rob + q * star
    return np.real(np.exp(-1j * lam) * total), bad


def theorem3_condition_report(f: FunctionSpec, lam: float, q: float,
                              grid: GridSpec | None = None, tol: float = 1e-9) -> MembershipReport:
    if not q > -1:
        raise DomainError("q must exceed -1")
    if not abs(lam) < math.pi / 2:
        raise DomainError("|lambda| < pi/2 required")
    grid = as_grid(grid)
    z = grid.points()
    vals, bad = theorem3_functional(f, lam, q, z)
    return min_report("Re e^{-i lam}(1 + z f''/f' + q z f'/f)", vals, z, grid, tol, bad,
                      extras={"lambda": lam, "q": q})


@dataclass(frozen=True)
class AdmissibleK:
    k: float
    conclusive: bool

    def to_dict(self) -> dict:
        return {"k": self.k, "conclusive": self.conclusive}


def admissible_k(lam: float, q: float, second_coeff_zero: bool = False) -> AdmissibleK:
    """Smallest ``k`` for which the condition with parameters ``lam, q`` gives ``f in S(k)``.

    ``conclusive`` is False when that ``k`` is not below 1.
    """
    c = math.cos(lam)
    if not c > 0:
        raise DomainError("cos(lambda) must be positive")
    if not q > -1:
        raise DomainError("q must exceed -1")
    if second_coeff_zero:
        k = c if q <= 0 else (1.0 + 2.0 * q) * c
    else:
        k = 2.0 * c if q <= 0 else (2.0 + 4.0 * q) * c
    return AdmissibleK(k, k < 1.0)


@dataclass(frozen=True)
class HottaParams:
    """``s = a + i b`` with ``a > 0``, a free constant ``c`` and a target ``k`` in [0, 1)."""

    a: float
    b: float
    c: complex
    k: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError("a must be positive")
        if not 0 <= self.k < 1:
            raise DomainError("k must lie in [0, 1)")
        object.__setattr__(self, "c", complex(self.c))

    @property
    def s(self) -> complex:
        return complex(self.a, self.b)

    @property
    def M(self) -> float:
        s = self.s
        if self.a <= 1:
            return self.a * self.k * abs(s) + (self.a - 1.0) * abs(s + self.c)
        return self.k * abs(s)

    @property
    def l(self) -> float:
        k, a, s = self.k, self.a, self.s
        return (2 * k * a + (1 - k * k) * abs(self.b)) / ((1 + k * k) * a + (1 - k * k) * abs(s))


@dataclass
class HottaResult:
    lhs_max: float
    argmax: complex
    M: float
    l: float
    verdict: Verdict
    tol: float

    def to_dict(self) -> dict:
        return {"lhs_max": self.lhs_max, "argmax": [self.argmax.real, self.argmax.imag],
                "M": self.M, "l": self.l, "verdict": self.verdict.value, "tol": self.tol}


def hotta_check(f: FunctionSpec, params: HottaParams, grid: GridSpec | None = None,
                tol: float = 1e-9) -> HottaResult:
    """Sweep ``|c |z|^2 + s - a (1 - |z|^2) H_s(z)|`` and compare its maximum with ``M``.

    A Pass means the hypothesis holds on the grid, which would place ``f``
    in ``S(l)``.
    """
    grid = as_grid(grid)
    z = grid.points()
    r2 = np.abs(z) ** 2
    lhs = np.abs(params.c * r2 + params.s - params.a * (1.0 - r2) * H_s(f, params.s, z))
    idx = int(np.argmax(lhs))
    lhs_max = float(lhs.flat[idx])
    M = params.M
    verdict = Verdict.PASS if lhs_max <= M + tol else Verdict.FAIL
    return HottaResult(lhs_max, complex(z.flat[idx]), M, params.l, verdict, tol)


# ---------------------------------------------------------------------------
# extension and dilatation


def becker_extend(f: FunctionSpec, lam: float, w):
    """Extension ``F`` of ``f`` to the plane along the Loewner chain.

    ``F = f`` on the closed disk (boundary values from the closed form, which
    is the radial limit).  For ``|w| > 1``, ``F(w) = f_t(e^{i theta})`` with
    ``w = e^{t + i theta}``.
    """
    w = np.asarray(w, dtype=complex)
    rad = np.abs(w)
    inside = rad <= 1.0
    out = np.empty_like(w)
    if np.any(inside):
        out[inside] = np.asarray(_jet_unchecked(f, w[inside]).v0)
    if np.any(~inside):
        wo = w[~inside]
        t = np.log(rad[~inside])
        # f_t on the unit circle, all t at once: u = e^{-t} e^{i theta} = 1/conj(w)
        zeta = 1.0 / np.conj(wo)
        jet = _jet_unchecked(f, zeta)
        out[~inside] = np.asarray(jet.v0) - np.exp(-2j * lam) * 2.0 * np.sinh(t) \
            * (wo / rad[~inside]) * np.asarray(jet.v1)
    if not np.all(np.isfinite(out)):
        raise DegenerateError("extension is not finite", np.atleast_1d(w[~np.isfinite(out)]).tolist())
    return complex(out) if out.ndim == 0 else out


@dataclass
class DilatationField:
    """Sampled Beltrami coefficient of the extension on ``r_in <= |w| <= r_out``."""

    w: np.ndarray
    mu: np.ndarray
    max_abs_mu: float
    fd_step: float
    richardson_flagged: np.ndarray
    degenerate: np.ndarray
    extras: dict[str, Any] = field(default_factory=dict)

    def summary(self, k_bound: float, mu_tol: float = 0.01) -> dict:
        ok = self.max_abs_mu <= k_bound + mu_tol and self.max_abs_mu < 1.0
        return {"max_abs_mu": self.max_abs_mu, "k_bound": k_bound,
                "verdict": "pass" if ok else "fail",
                "samples": int(self.w.size),
                "richardson_flagged": int(np.count_nonzero(self.richardson_flagged)),
                "degenerate": int(np.count_nonzero(self.degenerate))}

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["re_w", "im_w", "re_mu", "im_mu", "abs_mu"])
        for w, mu in zip(self.w.ravel(), self.mu.ravel()):
            wr.writerow([f"{x:.17g}" for x in (w.real, w.imag, mu.real, mu.imag, abs(mu))])
        return buf.getvalue()


def _wirtinger(f, lam, w, h):
    fx = (becker_extend(f, lam, w + h) - becker_extend(f, lam, w - h)) / (2.0 * h)
    fy = (becker_extend(f, lam, w + 1j * h) - becker_extend(f, lam, w - 1j * h)) / (2.0 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def dilatation_field(f: FunctionSpec, lam: float, r_out: float = 3.0, n_r: int = 100,
                     n_theta: int = 360, fd_step: float = 1e-5,
                     r_in: float = 1.001) -> DilatationField:
    """Measure ``mu = F_{conj w} / F_w`` of :func:`becker_extend` by central differences.

    Radii are geometric between ``r_in`` and ``r_out``.  Each sample is
    recomputed with half the step; a disagreement above 1e-3 flags it.
    Samples with ``|F_w| < 1e-10`` are flagged degenerate and left out of
    ``max_abs_mu``.
    """
    if not r_out > 1:
        raise DomainError("r_out must exceed 1")
    if fd_step > 1e-4 * (r_out - 1):
        raise DomainError("fd_step must not exceed 1e-4 (r_out - 1)")
    if r_in < 1 + 2 * fd_step or r_in > r_out:
        raise DomainError("need 1 + 2 fd_step <= r_in <= r_out")
    radii = np.geomspace(r_in, r_out, n_r)
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    w = radii[:, None] * np.exp(1j * theta)[None, :]
    dz, dzbar = _wirtinger(f, lam, w, fd_step)
    dz2, dzbar2 = _wirtinger(f, lam, w, fd_step / 2)
    degenerate = np.abs(dz) < 1e-10
    safe = np.where(degenerate, 1.0, dz)
    mu = np.where(degenerate, np.nan, dzbar / safe)
    mu2 = dzbar2 / np.where(degenerate, 1.0, dz2)
    flagged = ~degenerate & (np.abs(mu - mu2) > 1e-3)
    if np.any(degenerate):
        warnings.warn(f"{np.count_nonzero(degenerate)} samples with degenerate Jacobian excluded")
    max_abs = float(np.nanmax(np.abs(mu))) if np.any(~degenerate) else math.nan
    return DilatationField(w, mu, max_abs, fd_step, flagged, degenerate,
                           {"lambda": lam, "r_in": r_in, "r_out": r_out})
