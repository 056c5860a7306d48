"""Static SVG of the real locus of a curve in the chart z = 1 and its real bitangents."""
from __future__ import annotations

import logging
from typing import Iterable, Sequence

import numpy as np
from skimage.measure import find_contours

from .numeric.curve import PlaneCurve
from .numeric.solver import TangencySolution, normalize_projective, realness

log = logging.getLogger(__name__)

GRID = 512
DEFAULT_WINDOW = (-2.0, 2.0, -2.0, 2.0)
SIZE = 512


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def sample_affine(curve: PlaneCurve, window=DEFAULT_WINDOW, grid: int = GRID) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Values of ``f(x, y, 1)`` on a ``grid x grid`` lattice (rows = y)."""
    xmin, xmax, ymin, ymax = window
    xs = np.linspace(xmin, xmax, grid)
    ys = np.linspace(ymin, ymax, grid)
    X, Y = np.meshgrid(xs, ys)
    vals = np.zeros_like(X)
    for (i, j, k), c in curve.normalized.items():
        vals += float(c) * X**i * Y**j
    return xs, ys, vals


def contour_paths(curve: PlaneCurve, window=DEFAULT_WINDOW, grid: int = GRID) -> list[np.ndarray]:
    """Marching-squares polylines of the real locus, in window coordinates."""
    xs, ys, vals = sample_affine(curve, window, grid)
    if vals.min() > 0 or vals.max() < 0:
        return []
    out = []
    for c in find_contours(vals, 0.0):
        rows, cols = c[:, 0], c[:, 1]
        x = np.interp(cols, np.arange(grid), xs)
        y = np.interp(rows, np.arange(grid), ys)
        out.append(np.column_stack([x, y]))
    return out


def clip_line(a: float, b: float, c: float, window=DEFAULT_WINDOW):
    """Segment of ``a x + b y + c = 0`` inside the window, or None."""
    xmin, xmax, ymin, ymax = window
    pts = []
    if abs(b) > 1e-15:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin - 1e-12 <= y <= ymax + 1e-12:
                pts.append((x, y))
    if abs(a) > 1e-15:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin - 1e-12 <= x <= xmax + 1e-12:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    pts = sorted(set((round(x, 12), round(y, 12)) for x, y in pts))
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def real_lines(solutions: Iterable[TangencySolution], tol: float = 1e-8) -> list[np.ndarray]:
    out = []
    for s in solutions:
        if realness(s, tol):
            out.append(normalize_projective(s.dual).real)
    return out


def render_svg(
    curve: PlaneCurve,
    bitangents: Sequence[TangencySolution] = (),
    window=DEFAULT_WINDOW,
    higher_order: Sequence[TangencySolution] = (),
    grid: int = GRID,
    size: int = SIZE,
) -> str:
    """Deterministic SVG text: one ``<polyline>`` per contour piece, one ``<line>`` per real bitangent.

    Lines in ``higher_order`` (a single contact of order >= 4, the limit of
    two merging tangency points) are drawn too, marked ``class="hyperflex"``.
    """
    xmin, xmax, ymin, ymax = window
    sx = size / (xmax - xmin)
    sy = size / (ymax - ymin)

    def to_px(x, y):
        return (x - xmin) * sx, (ymax - y) * sy

    paths = contour_paths(curve, window, grid)
    if not paths:
        log.warning("no real branch of the curve inside the window")
    lines = []
    tagged = [(v, "") for v in real_lines(bitangents)] + [(v, ' class="hyperflex"') for v in real_lines(higher_order)]
    for (a, b, c), tag in tagged:
        seg = clip_line(a, b, c, window)
        if seg is not None:
            lines.append((seg, tag))
        else:
            log.warning("real bitangent %.6g x + %.6g y + %.6g = 0 misses the window", a, b, c)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{_escape(str(curve))}</title>",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        '<g id="curve" fill="none" stroke="black" stroke-width="1.5">',
    ]
    for p in paths:
        pts = " ".join(f"{_fmt(u)},{_fmt(v)}" for u, v in (to_px(x, y) for x, y in p))
        out.append(f'<polyline points="{pts}"/>')
    out.append("</g>")
    out.append('<g id="bitangents" stroke="crimson" stroke-width="0.8">')
    for ((x1, y1), (x2, y2)), tag in lines:
        u1, v1 = to_px(x1, y1)
        u2, v2 = to_px(x2, y2)
        out.append(f'<line{tag} x1="{_fmt(u1)}" y1="{_fmt(v1)}" x2="{_fmt(u2)}" y2="{_fmt(v2)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
