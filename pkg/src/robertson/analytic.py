"""Normalized analytic functions on the unit disk.

A :class:`FunctionSpec` describes a function ``f`` with ``f(0) = 0`` and
``f'(0) = 1``, either one of the closed-form families used throughout the
package or a truncated Taylor polynomial.  Every evaluation goes through
:func:`eval_jet`, which returns ``(f, f', f'')`` at one point or at an array
of points.

All fractional powers use the principal logarithm.  For ``|z| < 1`` the base
``1 - z`` has positive real part, so ``(1 - z)**beta`` is analytic on the disk
and no branch cut is ever crossed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, QuadratureError

__all__ = [
    "Kind",
    "FunctionSpec",
    "Jet2",
    "principal_log",
    "principal_pow",
    "eval_jet",
    "log_fprime",
    "alpha_primitive",
    "robertson_alpha",
]


def principal_log(w):
    """Principal logarithm with imaginary part in (-pi, pi].

    A negative real ``w`` stored with imaginary part ``-0.0`` would otherwise
    land on ``-pi``; the signed zero is folded to ``+0.0`` first.
    """
    w = np.asarray(w, dtype=complex)
    w = w.real + 1j * (w.imag + 0.0)
    out = np.log(w)
    return out[()] if out.ndim == 0 else out


def principal_pow(w, alpha):
    """``exp(alpha * Log w)`` on the principal branch.

    ``w = 0`` is allowed only when ``Re alpha > 0`` (the power is then 0).
    Works elementwise on arrays.
    """
    alpha = complex(alpha)
    w_arr = np.asarray(w, dtype=complex)
    zero = w_arr == 0
    if np.any(zero):
        if alpha.real <= 0:
            raise DomainError("principal_pow: w = 0 with Re(alpha) <= 0")
        safe = np.where(zero, 1.0, w_arr)
        out = np.where(zero, 0.0, np.exp(alpha * principal_log(safe)))
    else:
        out = np.exp(alpha * principal_log(w_arr))
    out = np.asarray(out, dtype=complex)
    return complex(out) if out.ndim == 0 else out


def robertson_alpha(lam: float) -> complex:
    """Exponent ``e^{-i lam} / cos lam`` linking R(lam) to the convex class."""
    return complex(np.exp(-1j * lam) / math.cos(lam))


class Kind(str, Enum):
    ROBERTSON_EXTREMAL = "RobertsonExtremal"
    SPIRALLIKE_EXTREMAL = "SpirallikeExtremal"
    ROYSTER = "Royster"
    HALF_PLANE = "HalfPlane"
    IDENTITY = "Identity"
    TAYLOR = "Taylor"


@dataclass(frozen=True)
class Jet2:
    """Values ``(f(z), f'(z), f''(z))``; scalars or equally shaped arrays."""

    v0: Any
    v1: Any
    v2: Any


def _as_complex_tuple(values: Sequence) -> tuple[complex, ...]:
    out = []
    for v in values:
        if isinstance(v, (list, tuple)):
            re, im = v
            out.append(complex(float(re), float(im)))
        else:
            out.append(complex(v))
    return tuple(out)


@dataclass(frozen=True)
class FunctionSpec:
    """A normalized analytic function on the unit disk.

    ``rotation`` (unimodular) turns ``f`` into ``f(eps z) / eps``; it defaults
    to 1 and is mostly useful for covariance checks.
    """

    kind: Kind
    lam: float = 0.0
    mu: complex = 0j
    coeffs: tuple[complex, ...] = (1 + 0j,)
    rotation: complex = 1 + 0j

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "rotation", complex(self.rotation))
        object.__setattr__(self, "coeffs", _as_complex_tuple(self.coeffs))
        if abs(abs(self.rotation) - 1.0) > 1e-12:
            raise DomainError("rotation must be unimodular")
        if self.kind in (Kind.ROBERTSON_EXTREMAL, Kind.SPIRALLIKE_EXTREMAL):
            if not abs(self.lam) < math.pi / 2:
                raise DomainError(f"lambda must satisfy |lambda| < pi/2, got {self.lam}")
        if self.kind is Kind.TAYLOR:
            if len(self.coeffs) < 1:
                raise DomainError("Taylor spec needs at least one coefficient")
            if self.coeffs[0] != 1:
                raise DomainError("Taylor spec must have a_1 = 1 exactly")

    # constructors -------------------------------------------------------

    @classmethod
    def robertson_extremal(cls, lam: float) -> "FunctionSpec":
        return cls(Kind.ROBERTSON_EXTREMAL, lam=float(lam))

    @classmethod
    def spirallike_extremal(cls, lam: float) -> "FunctionSpec":
        return cls(Kind.SPIRALLIKE_EXTREMAL, lam=float(lam))

    @classmethod
    def royster(cls, mu: complex) -> "FunctionSpec":
        return cls(Kind.ROYSTER, mu=complex(mu))

    @classmethod
    def half_plane(cls) -> "FunctionSpec":
        return cls(Kind.HALF_PLANE)

    @classmethod
    def identity(cls) -> "FunctionSpec":
        return cls(Kind.IDENTITY)

    @classmethod
    def taylor(cls, coeffs: Sequence) -> "FunctionSpec":
        return cls(Kind.TAYLOR, coeffs=tuple(coeffs))

    def rotated(self, eps: complex) -> "FunctionSpec":
        """Spec for ``f(eps z) / eps`` composed with any existing rotation."""
        return FunctionSpec(self.kind, self.lam, self.mu, self.coeffs, self.rotation * complex(eps))

    # serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind.value}
        if self.kind in (Kind.ROBERTSON_EXTREMAL, Kind.SPIRALLIKE_EXTREMAL):
            d["lambda"] = self.lam
        elif self.kind is Kind.ROYSTER:
            d["mu"] = [self.mu.real, self.mu.imag]
        elif self.kind is Kind.TAYLOR:
            d["coeffs"] = [[c.real, c.imag] for c in self.coeffs]
        if self.rotation != 1:
            d["rotation"] = [self.rotation.real, self.rotation.imag]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionSpec":
        kind = Kind(d["kind"])
        kwargs: dict[str, Any] = {}
        if "lambda" in d:
            kwargs["lam"] = float(d["lambda"])
        if "mu" in d:
            kwargs["mu"] = _as_complex_tuple([d["mu"]])[0]
        if "coeffs" in d:
            kwargs["coeffs"] = _as_complex_tuple(d["coeffs"])
        if "rotation" in d:
            kwargs["rotation"] = _as_complex_tuple([d["rotation"]])[0]
        return cls(kind, **kwargs)

    # evaluation ---------------------------------------------------------

    @property
    def is_builtin(self) -> bool:
        return self.kind is not Kind.TAYLOR

    @property
    def second_coefficient(self) -> complex:
        """``a_2 = f''(0) / 2``."""
        return complex(_jet_unchecked(self, 0j).v2) / 2

    def truncation_estimate(self, z):
        """Rough tail size ``|a_N| |z|^N N`` of a Taylor spec; 0 for closed forms."""
        if self.kind is not Kind.TAYLOR:
            return np.zeros_like(np.abs(np.asarray(z, dtype=complex)))[()]
        n = len(self.coeffs)
        return abs(self.coeffs[-1]) * np.abs(np.asarray(z, dtype=complex)) ** n * n


def _raw_jet(spec: FunctionSpec, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    kind = spec.kind
    if kind is Kind.IDENTITY:
        return z.copy(), np.ones_like(z), np.zeros_like(z)
    if kind is Kind.TAYLOR:
        c = spec.coeffs
        # f = sum_{n>=1} a_n z^n, Horner for value and both derivatives
        p0 = np.zeros_like(z)
        p1 = np.zeros_like(z)
        p2 = np.zeros_like(z)
        for n in range(len(c), 0, -1):
            a = c[n - 1]
            p0 = p0 * z + a
            p1 = p1 * z + n * a
            if n >= 2:
                p2 = p2 * z + n * (n - 1) * a
        return p0 * z, p1, p2
    w = 1.0 - z
    if kind is Kind.HALF_PLANE:
        return z / w, 1.0 / w**2, 2.0 / w**3
    if kind is Kind.ROBERTSON_EXTREMAL:
        beta = -np.exp(2j * spec.lam)
        P = np.exp(beta * principal_log(w))
        return (1.0 - P) / beta, P / w, (1.0 - beta) * P / w**2
    if kind is Kind.SPIRALLIKE_EXTREMAL:
        gamma = 1.0 + np.exp(2j * spec.lam)
        Q = np.exp(-gamma * principal_log(w))
        return (
            z * Q,
            Q + gamma * z * Q / w,
            2.0 * gamma * Q / w + gamma * (gamma + 1.0) * z * Q / w**2,
        )
    if kind is Kind.ROYSTER:
        mu = spec.mu
        if mu == 0:
            return -principal_log(w), 1.0 / w, 1.0 / w**2
        Q = np.exp(-mu * principal_log(w))
        return (Q - 1.0) / mu, Q / w, (mu + 1.0) * Q / w**2
    raise AssertionError(kind)


def _jet_unchecked(spec: FunctionSpec, z) -> Jet2:
    z_arr = np.asarray(z, dtype=complex)
    eps = spec.rotation
    if eps == 1:
        v0, v1, v2 = _raw_jet(spec, z_arr)
    else:
        v0, v1, v2 = _raw_jet(spec, eps * z_arr)
        v0, v2 = v0 / eps, v2 * eps
    if z_arr.ndim == 0:
        return Jet2(complex(v0), complex(v1), complex(v2))
    return Jet2(v0, v1, v2)


def _check_disk(z) -> None:
    if np.any(np.abs(np.asarray(z, dtype=complex)) >= 1.0):
        raise DomainError("evaluation requires |z| < 1")


def eval_jet(f: FunctionSpec, z) -> Jet2:
    """``(f(z), f'(z), f''(z))`` for ``|z| < 1``; ``z`` may be an array."""
    _check_disk(z)
    return _jet_unchecked(f, z)


_UNWRAP_SAMPLES = 256


def _taylor_log_fprime(spec: FunctionSpec, z: np.ndarray) -> np.ndarray:
    # continuous log f' along the segment [0, z], anchored at log f'(0) = 0
    tau = np.linspace(0.0, 1.0, _UNWRAP_SAMPLES + 1)
    flat = z.ravel()
    out = np.empty_like(flat)
    for start in range(0, flat.size, 4096):
        chunk = flat[start:start + 4096]
        d1 = _jet_unchecked(spec, chunk[:, None] * tau).v1
        phase = np.unwrap(np.angle(d1), axis=-1)
        out[start:start + 4096] = np.log(np.abs(d1[:, -1])) + 1j * phase[:, -1]
    return out.reshape(z.shape)


def log_fprime(f: FunctionSpec, z):
    """Branch of ``log f'`` continuous along ``[0, z]`` with value 0 at the origin.

    Closed-form families use the exact expression; Taylor specs unwrap the
    phase of ``f'`` along the radial segment.
    """
    _check_disk(z)
    z_arr = np.asarray(z, dtype=complex)
    u = f.rotation * z_arr
    kind = f.kind
    if kind is Kind.IDENTITY:
        out = np.zeros_like(u)
    elif kind is Kind.HALF_PLANE:
        out = -2.0 * principal_log(1.0 - u)
    elif kind is Kind.ROBERTSON_EXTREMAL:
        out = -(1.0 + np.exp(2j * f.lam)) * principal_log(1.0 - u)
    elif kind is Kind.SPIRALLIKE_EXTREMAL:
        e2 = np.exp(2j * f.lam)
        out = principal_log(1.0 + e2 * u) - (2.0 + e2) * principal_log(1.0 - u)
    elif kind is Kind.ROYSTER:
        out = -(f.mu + 1.0) * principal_log(1.0 - u)
    else:
        if np.any(_jet_unchecked(f, z_arr).v1 == 0):
            raise DomainError("f' vanishes; log f' undefined")
        out = _taylor_log_fprime(f, np.atleast_1d(z_arr)).reshape(z_arr.shape)
    out = np.asarray(out, dtype=complex)
    return complex(out) if out.ndim == 0 else out


def alpha_primitive(
    f: FunctionSpec,
    lam: float,
    z: complex,
    epsabs: float = 1e-10,
    limit: int = 2**15,
) -> complex:
    """``g(z) = integral_0^z f'(zeta)**alpha d zeta`` with ``alpha = e^{-i lam}/cos lam``.

    The power is ``exp(alpha * log f')`` with the branch of ``log f'`` fixed
    by ``log f'(0) = 0``, so the integrand is analytic along the path.
    Integration runs over the radial segment with adaptive Gauss-Kronrod
    (QUADPACK).
    """
    if not abs(lam) < math.pi / 2:
        raise DomainError("alpha_primitive requires |lambda| < pi/2")
    z = complex(z)
    _check_disk(z)
    if z == 0:
        return 0j
    alpha = robertson_alpha(lam)
    if lam == 0:
        def integrand(tau):
            return z * complex(_jet_unchecked(f, tau * z).v1)
    else:
        def integrand(tau):
            return z * complex(np.exp(alpha * log_fprime(f, tau * z)))

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, err = quad(integrand, 0.0, 1.0, complex_func=True,
                              epsabs=epsabs, epsrel=epsabs, limit=limit)
        except IntegrationWarning as exc:
            # rerun silently to recover the achieved error estimate
            warnings.simplefilter("ignore", IntegrationWarning)
            _, err = quad(integrand, 0.0, 1.0, complex_func=True,
                          epsabs=epsabs, epsrel=epsabs, limit=limit)
            raise QuadratureError(f"alpha_primitive did not converge: {exc}", abs(err)) from exc
    return complex(value)
