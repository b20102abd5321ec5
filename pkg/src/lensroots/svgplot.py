"""SVG rendering of the zero curves of Re f (green) and Im f (red).

Marching squares with linear interpolation on a regular grid; certified
roots are drawn as black dots.  Output is deterministic for fixed input
and grid resolution.
"""

from __future__ import annotations

import numpy as np

from . import mixedpoly as mp

# cell-edge pairs crossed for each marching-squares case index, corners
# ordered (x0,y0), (x1,y0), (x1,y1), (x0,y1); ambiguous saddles split
_SEGMENTS = {
    1: [(3, 0)], 2: [(0, 1)], 3: [(3, 1)], 4: [(1, 2)],
    5: [(3, 0), (1, 2)], 6: [(0, 2)], 7: [(3, 2)], 8: [(2, 3)],
    9: [(0, 2)], 10: [(0, 1), (2, 3)], 11: [(1, 2)],
    12: [(1, 3)], 13: [(0, 1)], 14: [(3, 0)],
}


def _edge_point(edge, i, j, vals, xs, ys):
    corners = ((0, 0), (1, 0), (1, 1), (0, 1))
    (ca, cb) = ((0, 1), (1, 2), (2, 3), (3, 0))[edge]
    (ax, ay), (bx, by) = corners[ca], corners[cb]
    va = vals[j + ay, i + ax]
    vb = vals[j + by, i + bx]
    t = 0.5 if va == vb else va / (va - vb)
    x = xs[i + ax] + t * (xs[i + bx] - xs[i + ax])
    y = ys[j + ay] + t * (ys[j + by] - ys[j + ay])
    return x, y


def contour_segments(vals: np.ndarray, xs: np.ndarray, ys: np.ndarray):
    """Zero-level segments of a scalar grid vals[j, i] over xs, ys."""
    segs = []
    for j in range(len(ys) - 1):
        for i in range(len(xs) - 1):
            idx = 0
            if vals[j, i] < 0:
                idx |= 1
            if vals[j, i + 1] < 0:
                idx |= 2
            if vals[j + 1, i + 1] < 0:
                idx |= 4
            if vals[j + 1, i] < 0:
                idx |= 8
            for ea, eb in _SEGMENTS.get(idx, ()):
                segs.append((_edge_point(ea, i, j, vals, xs, ys),
                             _edge_point(eb, i, j, vals, xs, ys)))
    return segs


def render_svg(f: mp.MixedPolynomial, box, roots=(), grid: int = 800,
               size: int = 720) -> str:
    """SVG of the two zero curves over the box with root markers."""
    x0, x1, y0, y1 = map(float, box)
    xs = np.linspace(x0, x1, grid + 1)
    ys = np.linspace(y0, y1, grid + 1)
    gx, gy = np.meshgrid(xs, ys)
    vals = mp.evaluate_many(f, gx + 1j * gy)

    def to_px(x, y):
        px = (x - x0) / (x1 - x0) * size
        py = (y1 - y) / (y1 - y0) * size  # svg y grows downward
        return px, py

    def polyline(segs, color):
        parts = []
        for (ax, ay), (bx, by) in segs:
            pax, pay = to_px(ax, ay)
            pbx, pby = to_px(bx, by)
            parts.append(
                f'<line x1="{pax:.2f}" y1="{pay:.2f}" x2="{pbx:.2f}" y2="{pby:.2f}" '
                f'stroke="{color}" stroke-width="1"/>')
        return "\n".join(parts)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<!-- box [{x0:g}, {x1:g}] x [{y0:g}, {y1:g}], grid {grid} -->',
        polyline(contour_segments(np.ascontiguousarray(vals.real), xs, ys), "green"),
        polyline(contour_segments(np.ascontiguousarray(vals.imag), xs, ys), "red"),
    ]
    for r in roots:
        px, py = to_px(r.center.real, r.center.imag)
        out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(p for p in out if p)
