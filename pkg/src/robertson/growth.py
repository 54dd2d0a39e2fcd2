"""Growth envelopes, the boundedness integral, and the classical constants.

The envelope of the lam-spirallike class is attained by the extremal map
``P_lam(z) = z / (1 - z)^{1 + e^{2 i lam}}`` at two explicit angles, so the
envelope is computed by evaluating ``P_lam`` there.  The closed forms are
kept as a second, independent path.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.spatial import cKDTree

from .analytic import FunctionSpec, _jet_unchecked, eval_jet
from .errors import DivergenceError, DomainError, NoAdmissibleMuError, QuadratureError
from .grid import GridSpec, as_grid

__all__ = [
    "GrowthEnvelope",
    "growth_bounds",
    "growth_closed_forms",
    "envelopes_csv",
    "integrand",
    "boundedness_integral",
    "boundedness_status",
    "asymptotic_check",
    "cubic_root_x0",
    "royster_mu",
    "collision_search",
    "Collision",
]

_SPLIT = 1e-3


def _check_lambda(lam: float) -> None:
    if not abs(lam) < math.pi / 2:
        raise DomainError(f"lambda must satisfy |lambda| < pi/2, got {lam}")


def _wrap(theta: float) -> float:
    return theta - 2.0 * math.pi * math.ceil((theta - math.pi) / (2.0 * math.pi))


@dataclass(frozen=True)
class GrowthEnvelope:
    r: float
    psi_lo: float
    psi_hi: float
    theta_lo: float
    theta_hi: float


def growth_bounds(lam: float, r: float) -> GrowthEnvelope:
    """Sharp bounds ``psi_lo <= |f(z)| <= psi_hi`` on ``|z| = r`` for ``f in SP(lam)``.

    The extremal angles solve ``sin(lam + theta) = r sin lam`` with
    ``cos(lam + theta)`` negative for the minimum and positive for the maximum.
    """
    _check_lambda(lam)
    if not 0 < r < 1:
        raise DomainError("growth_bounds requires 0 < r < 1")
    a = math.asin(r * math.sin(lam))
    theta_hi = _wrap(a - lam)
    theta_lo = _wrap(math.pi - a - lam)
    p = FunctionSpec.spirallike_extremal(lam)
    z = np.array([r * np.exp(1j * theta_lo), r * np.exp(1j * theta_hi)])
    lo, hi = np.abs(eval_jet(p, z).v0)
    return GrowthEnvelope(r, float(lo), float(hi), theta_lo, theta_hi)


def growth_closed_forms(lam: float, r: float) -> tuple[float, float]:
    """Closed-form ``(psi_lo, psi_hi)``.

    ``psi_lo = r exp(-sin 2lam asin(r sin lam)) / (sqrt(1 - r^2 sin^2 lam) + r cos lam)^{2cos^2 lam}``
    and ``psi_hi`` flips the exponential and the sign of ``r cos lam``.
    """
    _check_lambda(lam)
    s, c = math.sin(lam), math.cos(lam)
    root = math.sqrt(1.0 - (r * s) ** 2)
    a = math.asin(r * s)
    e = 2.0 * c * c
    # root - r c = (1 - r^2) / (root + r c), written without cancellation
    lo = r * math.exp(-math.sin(2 * lam) * a) / (root + r * c) ** e
    hi = r * math.exp(math.sin(2 * lam) * a) / ((1.0 - r * r) / (root + r * c)) ** e
    return lo, hi


def envelopes_csv(lam: float, r_values: Iterable[float]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "psi_lo", "psi_hi", "theta_lo", "theta_hi"])
    for r in r_values:
        env = growth_bounds(lam, r)
        w.writerow([f"{x:.17g}" for x in (env.r, env.psi_lo, env.psi_hi,
                                           env.theta_lo, env.theta_hi)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# boundedness of R(lam)


def integrand(lam: float, t):
    """``exp(sin 2lam asin(t sin lam)) / (sqrt(1 - t^2 sin^2 lam) - t cos lam)^{2 cos^2 lam}``."""
    s, c = math.sin(lam), math.cos(lam)
    t = np.asarray(t, dtype=float)
    root = np.sqrt(1.0 - (t * s) ** 2)
    denom = (1.0 - t) * (1.0 + t) / (root + t * c)
    return np.exp(math.sin(2 * lam) * np.arcsin(t * s)) / denom ** (2.0 * c * c)


def _regular_part(lam: float, s):
    """``integrand(1 - s) * s^{2cos^2 lam}``, smooth on ``[0, 1]``; tends to ``e^{sin2lam lam} cos^{2cos^2 lam}``."""
    sn, c = math.sin(lam), math.cos(lam)
    s = np.asarray(s, dtype=float)
    t = 1.0 - s
    root = np.sqrt(1.0 - (t * sn) ** 2)
    ratio = (2.0 - s) / (root + t * c)
    return np.exp(math.sin(2 * lam) * np.arcsin(t * sn)) / ratio ** (2.0 * c * c)


def _quad(func, a, b, epsabs=1e-11, **kw) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, _ = quad(func, a, b, epsabs=epsabs, epsrel=1e-12, limit=2**15, **kw)
        except IntegrationWarning as exc:
            warnings.simplefilter("ignore", IntegrationWarning)
            _, err = quad(func, a, b, epsabs=epsabs, epsrel=1e-12, limit=2**15, **kw)
            raise QuadratureError(str(exc), err) from exc
    return float(val)


def _exponent(lam: float) -> float:
    return 2.0 * math.cos(lam) ** 2


def boundedness_integral(lam: float, r: float) -> float:
    """``I(r) = integral_0^r integrand(lam, t) dt``, an upper bound for ``|f(z)|`` on ``|z| = r``.

    Near ``t = 1`` the integrand behaves like ``(s / cos lam)^{-2cos^2 lam}``
    with ``s = 1 - t``.  Past ``t = 1 - 1e-3`` the tail is integrated in ``s``:
    with an algebraic weight when ``r = 1`` and with ``x = log s`` otherwise.
    """
    _check_lambda(lam)
    if not 0 < r <= 1:
        raise DomainError("boundedness_integral requires 0 < r <= 1")
    e = _exponent(lam)
    if r == 1 and e >= 1.0 - 1e-12:
        raise DivergenceError(
            f"integral diverges at t = 1: exponent 2cos^2(lambda) = {e:.6g} >= 1")
    if r <= 1.0 - _SPLIT:
        return _quad(lambda t: float(integrand(lam, t)), 0.0, r)
    head = _quad(lambda t: float(integrand(lam, t)), 0.0, 1.0 - _SPLIT)
    if r == 1:
        tail = _quad(lambda s: float(_regular_part(lam, s)), 0.0, _SPLIT,
                     weight="alg", wvar=(-e, 0.0))
    else:
        lo = math.log(1.0 - r)
        hi = math.log(_SPLIT)
        tail = _quad(lambda x: float(_regular_part(lam, math.exp(x))) * math.exp((1.0 - e) * x),
                     lo, hi)
    return head + tail


def tail_model(lam: float, s: float) -> float:
    """Leading term of ``I(1) - I(1 - s)``: ``phi(0) s^{1-e} / (1 - e)``, ``e = 2cos^2 lam``."""
    e = _exponent(lam)
    return float(_regular_part(lam, 0.0)) * s ** (1.0 - e) / (1.0 - e)


@dataclass(frozen=True)
class BoundednessStatus:
    cos_lambda: float
    exponent: float
    bounded_by_theorem: bool
    extremal_unbounded: bool
    conjecture_only: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def boundedness_status(lam: float) -> BoundednessStatus:
    """Classify ``lam`` against the threshold ``cos lam = 1/sqrt 2``.

    At the threshold itself nothing is asserted: the extremal map is bounded
    there and boundedness of the whole class is only conjectured.
    """
    _check_lambda(lam)
    c = math.cos(lam)
    e = 2.0 * c * c
    at_threshold = abs(e - 1.0) <= 1e-12
    return BoundednessStatus(c, e, e < 1.0 and not at_threshold,
                             e > 1.0 and not at_threshold, at_threshold)


def asymptotic_check(lam: float, s: float) -> float:
    """``g(s) cos(lam) / s`` with ``g(s) = sqrt(1 - (1-s)^2 sin^2 lam) - (1-s) cos lam``.

    Evaluated as ``1 / (1 + tan(lam) sin(lam) s / (sqrt(...) + cos lam))``,
    which is algebraically identical and free of cancellation; it is exactly
    1 at ``lam = 0``.
    """
    _check_lambda(lam)
    if not 0 < s <= 0.5:
        raise DomainError("asymptotic_check requires 0 < s <= 0.5")
    sn, c = math.sin(lam), math.cos(lam)
    root = math.sqrt(1.0 - ((1.0 - s) * sn) ** 2)
    return c / (c + sn * sn * s / (root + c))


# ---------------------------------------------------------------------------
# constants


def _cubic(x: float) -> float:
    return ((16.0 * x + 16.0) * x + 1.0) * x - 1.0


def cubic_root_x0(tol: float = 1e-12) -> float:
    """Unique positive root of ``16x^3 + 16x^2 + x - 1`` by bisection on [0, 1].

    The cubic is increasing on [0, 1] (derivative ``48x^2 + 32x + 1 > 0``) and
    changes sign there, so the root in (0, 1) is unique.
    """
    lo, hi = 0.0, 1.0
    flo, fhi = _cubic(lo), _cubic(hi)
    assert flo < 0 < fhi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _cubic(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _royster_failures(mu: complex, lam: float) -> list[str]:
    failed = []
    if abs(abs(mu + 1) * np.exp(1j * lam) - (mu + 1)) > 1e-12 * max(1.0, abs(mu + 1)):
        failed.append("mu+1 = |mu+1| e^{i lam}")
    if abs(mu) > 1 + 1e-15:
        failed.append("|mu| <= 1")
    if not abs(mu + 1) > 1:
        failed.append("|mu+1| > 1")
    if not abs(mu - 1) > 1:
        failed.append("|mu-1| > 1")
    return failed


def royster_mu(lam: float) -> complex:
    """Parameter ``mu`` for the non-univalent Royster map in ``R(lam)``.

    ``mu + 1 = R e^{i lam}`` with ``|mu| <= 1``, ``|mu + 1| > 1`` and
    ``|mu - 1| > 1``.  The default ``R = 2 cos lam`` gives ``mu = e^{2 i lam}``,
    valid while ``|sin lam| > 1/2``; otherwise ``R`` is searched on
    ``(1, 2 cos lam]`` for the largest margin in the ``|mu - 1| > 1`` constraint.
    """
    _check_lambda(lam)
    c = math.cos(lam)
    if not 0.5 < c < 1:
        failed = ["1/2 < cos(lambda) < 1"]
        if c >= 1:
            failed.append("|mu-1| > 1")
        raise NoAdmissibleMuError("no admissible Royster parameter", failed)
    mu = complex(np.exp(2j * lam))
    if not _royster_failures(mu, lam):
        return mu
    R = np.linspace(1.0, 2.0 * c, 4097)[1:]
    cands = R * np.exp(1j * lam) - 1.0
    margin = np.minimum(np.abs(cands - 1) - 1, np.abs(cands + 1) - 1)
    ok = (np.abs(cands) <= 1) & (margin > 0)
    if not np.any(ok):
        raise NoAdmissibleMuError("no admissible Royster parameter", _royster_failures(mu, lam))
    best = complex(cands[np.argmax(np.where(ok, margin, -np.inf))])
    failed = _royster_failures(best, lam)
    if failed:
        raise NoAdmissibleMuError("no admissible Royster parameter", failed)
    return best


# ---------------------------------------------------------------------------
# collisions


@dataclass(frozen=True)
class Collision:
    z1: complex
    z2: complex
    residual: float

    def to_dict(self) -> dict:
        return {"z1": [self.z1.real, self.z1.imag], "z2": [self.z2.real, self.z2.imag],
                "residual": self.residual}


def _newton_partner(f: FunctionSpec, target: complex, z: complex, iters: int = 60):
    """Solve ``f(z) = target`` by damped Newton from ``z``; None if it leaves the disk."""
    for _ in range(iters):
        jet = _jet_unchecked(f, z)
        if jet.v1 == 0 or not np.isfinite(jet.v0):
            return None
        step = (jet.v0 - target) / jet.v1
        # halve the step until the iterate stays in the disk and the residual drops
        res0 = abs(jet.v0 - target)
        lam = 1.0
        while lam > 1e-6:
            cand = z - lam * step
            if abs(cand) < 1:
                val = _jet_unchecked(f, cand).v0
                if np.isfinite(val) and abs(val - target) < res0:
                    break
            lam *= 0.5
        else:
            return None
        z = cand
        if abs(step) * lam < 1e-15 * max(1.0, abs(z)):
            break
    return z


def collision_search(f: FunctionSpec, grid: GridSpec | None = None, separation: float = 0.05,
                     collision_tol: float = 1e-4, max_candidates: int = 400,
                     neighbours: int = 8) -> Collision | None:
    """Look for ``z1 != z2`` in the disk with ``f(z1) = f(z2)``.

    Grid points whose images are nearest neighbours (but whose preimages are
    at least ``separation`` apart) are ranked by relative image distance;
    the best candidates are refined by Newton's method on ``f(z2) = f(z1)``
    with ``z1`` held fixed.  A refined pair is accepted when the relative
    residual ``|f(z1) - f(z2)| / (1 + |f(z1)|)`` is below ``collision_tol``
    and the separation still holds.
    """
    grid = as_grid(grid)
    z = grid.points().ravel()
    w = np.asarray(eval_jet(f, z).v0)
    finite = np.isfinite(w)
    z, w = z[finite], w[finite]
    tree = cKDTree(np.column_stack([w.real, w.imag]))
    k = min(neighbours + 1, len(z))
    dist, idx = tree.query(np.column_stack([w.real, w.imag]), k=k)
    i = np.repeat(np.arange(len(z)), k)
    j = idx.ravel()
    d = dist.ravel()
    keep = (j != i) & (np.abs(z[i] - z[j]) >= separation)
    i, j, d = i[keep], j[keep], d[keep]
    if len(i) == 0:
        return None
    rel = d / (1.0 + np.abs(w[i]))
    order = np.argsort(rel, kind="stable")
    seen = set()
    best: Collision | None = None
    tried = 0
    for o in order:
        a, b = int(i[o]), int(j[o])
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen.add(key)
        tried += 1
        if tried > max_candidates:
            break
        z1 = complex(z[a])
        z2 = _newton_partner(f, complex(w[a]), complex(z[b]))
        if z2 is None or abs(z1 - z2) < separation:
            continue
        w1 = _jet_unchecked(f, z1).v0
        res = abs(w1 - _jet_unchecked(f, z2).v0) / (1.0 + abs(w1))
        if res < collision_tol and (best is None or res < best.residual):
            best = Collision(z1, z2, float(res))
            if res < 1e-12:
                break
    return best
