"""Polar sampling grids and the sweep report shared by every checker."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from .errors import DomainError

__all__ = ["GridSpec", "Verdict", "MembershipReport", "min_report"]


@dataclass(frozen=True)
class GridSpec:
    """Points ``r e^{i theta}`` with ``theta = 2 pi j / n_theta``.

    By default the radii are 40 values whose gaps ``1 - r`` shrink
    geometrically from 0.95 down to ``1 - r_max``, so the grid is densest
    next to the circle where the conditions are tightest.
    """

    r_values: tuple[float, ...]
    n_theta: int = 720

    def __post_init__(self):
        r = tuple(float(x) for x in self.r_values)
        object.__setattr__(self, "r_values", r)
        if not r:
            raise DomainError("grid needs at least one radius")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise DomainError("r_values must be strictly increasing")
        if r[0] <= 0 or r[-1] >= 1:
            raise DomainError("r_values must lie in (0, 1)")
        if self.n_theta < 8:
            raise DomainError("n_theta must be at least 8")

    @classmethod
    def default(cls, r_max: float = 0.99, r_count: int = 40, n_theta: int = 720,
                r_min: float = 0.05) -> "GridSpec":
        if not 0 < r_min < r_max < 1:
            raise DomainError("need 0 < r_min < r_max < 1")
        if r_count == 1:
            return cls((r_max,), n_theta)
        gaps = np.geomspace(1.0 - r_min, 1.0 - r_max, r_count)
        r = 1.0 - gaps
        r[-1] = r_max
        return cls(tuple(r), n_theta)

    @property
    def r_max(self) -> float:
        return self.r_values[-1]

    @property
    def r_count(self) -> int:
        return len(self.r_values)

    def thetas(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_theta) / self.n_theta

    def points(self) -> np.ndarray:
        """Array of shape ``(r_count, n_theta)``; row i is the circle ``r_values[i]``."""
        return np.asarray(self.r_values)[:, None] * np.exp(1j * self.thetas())[None, :]

    def to_dict(self) -> dict:
        return {"r_values": list(self.r_values), "n_theta": self.n_theta,
                "r_max": self.r_max, "r_count": self.r_count}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        return cls(tuple(d["r_values"]), int(d.get("n_theta", 720)))


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    BOUNDARY = "pass-boundary"


@dataclass
class MembershipReport:
    """Outcome of a grid sweep of a real functional that should stay positive."""

    functional: str
    min_value: float
    argmin: complex
    verdict: Verdict
    margin_tolerance: float
    grid: GridSpec
    flagged: list[complex] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is not Verdict.FAIL

    def to_dict(self) -> dict:
        d = {
            "functional": self.functional,
            "min_value": self.min_value,
            "argmin": [self.argmin.real, self.argmin.imag],
            "verdict": self.verdict.value,
            "margin_tolerance": self.margin_tolerance,
            "grid": self.grid.to_dict(),
        }
        if self.flagged:
            d["flagged"] = [[z.real, z.imag] for z in self.flagged]
        if self.extras:
            d["extras"] = self.extras
        return d


def min_report(functional: str, values: np.ndarray, points: np.ndarray, grid: GridSpec,
               tol: float, degenerate: np.ndarray | None = None,
               extras: dict | None = None, boundary_verdict: bool = False) -> MembershipReport:
    """Reduce sampled ``values`` to a report; Pass iff ``min > -tol``.

    Samples marked ``degenerate`` (or non-finite) are excluded from the
    minimum and force a Fail.  With ``boundary_verdict`` a minimum within
    ``tol`` of zero is reported as :attr:`Verdict.BOUNDARY`.
    """
    values = np.asarray(values, dtype=float)
    points = np.broadcast_to(np.asarray(points, dtype=complex), values.shape)
    bad = ~np.isfinite(values)
    if degenerate is not None:
        bad |= np.broadcast_to(degenerate, values.shape)
    flagged = [complex(z) for z in np.unique(points[bad])]
    good = np.where(bad, np.inf, values)
    if np.all(bad):
        min_value, argmin = -math.inf, complex(points.flat[0])
    else:
        idx = int(np.argmin(good))
        min_value, argmin = float(good.flat[idx]), complex(points.flat[idx])
    if flagged or min_value <= -tol:
        verdict = Verdict.FAIL
    elif boundary_verdict and min_value <= tol:
        verdict = Verdict.BOUNDARY
    else:
        verdict = Verdict.PASS
    return MembershipReport(functional, min_value, argmin, verdict, tol, grid,
                            flagged, dict(extras or {}))


def as_grid(grid: GridSpec | None) -> GridSpec:
    return GridSpec.default() if grid is None else grid


