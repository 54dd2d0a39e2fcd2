"""Minimal deterministic SVG output: polylines on auto-scaled axes."""

from __future__ import annotations

from typing import Sequence

import numpy as np

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b")


def _num(x: float) -> str:
    return f"{x:.3f}"


def polylines_svg(curves: Sequence[np.ndarray], labels: Sequence[str] = (), title: str = "",
                  size: int = 640, margin: int = 40, equal_aspect: bool = True) -> str:
    """Render complex-valued (or ``x + i y``) point sequences as polylines.

    Non-finite points split a curve into separate segments.
    """
    pts = [np.asarray(c, dtype=complex) for c in curves]
    finite = np.concatenate([p[np.isfinite(p)] for p in pts]) if pts else np.zeros(0, complex)
    if finite.size == 0:
        finite = np.array([0j, 1 + 1j])
    xmin, xmax = finite.real.min(), finite.real.max()
    ymin, ymax = finite.imag.min(), finite.imag.max()
    xspan = max(xmax - xmin, 1e-12)
    yspan = max(ymax - ymin, 1e-12)
    inner = size - 2 * margin
    if equal_aspect:
        sx = sy = inner / max(xspan, yspan)
    else:
        sx, sy = inner / xspan, inner / yspan

    def tx(x):
        return margin + (x - xmin) * sx

    def ty(y):
        return size - margin - (y - ymin) * sy

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{margin}" y="{margin // 2}" font-size="14">{title}</text>')
    # axes through the origin when it is in view
    if xmin <= 0 <= xmax:
        out.append(f'<line x1="{_num(tx(0))}" y1="{margin}" x2="{_num(tx(0))}" '
                   f'y2="{size - margin}" stroke="#bbbbbb"/>')
    if ymin <= 0 <= ymax:
        out.append(f'<line x1="{margin}" y1="{_num(ty(0))}" x2="{size - margin}" '
                   f'y2="{_num(ty(0))}" stroke="#bbbbbb"/>')
    for k, p in enumerate(pts):
        color = _COLORS[k % len(_COLORS)]
        ok = np.isfinite(p)
        # split at non-finite samples
        breaks = np.flatnonzero(~ok)
        starts = np.concatenate([[0], breaks + 1])
        ends = np.concatenate([breaks, [len(p)]])
        for a, b in zip(starts, ends):
            seg = p[a:b]
            if len(seg) < 2:
                continue
            coords = " ".join(f"{_num(tx(z.real))},{_num(ty(z.imag))}" for z in seg)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{coords}"/>')
        if k < len(labels):
            out.append(f'<text x="{size - margin - 150}" y="{margin + 16 * (k + 1)}" '
                       f'font-size="12" fill="{color}">{labels[k]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
