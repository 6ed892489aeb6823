"""SVG rendering of tilings in the three-tile affine convention.

Coordinates are the lattice (x, n); the SVG y axis points down, so n is
flipped.  With the vertex lattice (Z + 1/2) x Z:

* red tile at a red dot (x, n): parallelogram with vertical sides at x +- 1/2,
  leaning up-left, spanning n-1..n+1;
* blue tile at a blue dot (x, l - 1/2): unit square [x-1/2, x+1/2] x [l-1, l];
* green tile where a level line steps from x+1 on line l-1 to x on line l:
  parallelogram with horizontal sides, leaning up-left.

Every slanted edge is parallel to the oblique lines x + n = const.
"""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .enumeration import Tiling, path_positions
from .geometry import PolygonData


@dataclass(frozen=True)
class RenderStyle:
    red: str = "#d62728"
    blue: str = "#1f77b4"
    green: str = "#2ca02c"
    stroke: str = "#222222"
    stroke_width: float = 0.5
    scale: int = 12
    margin: int = 6
    red_dots: bool = True
    blue_dots: bool = True
    dot_radius: float = 0.12
    strips: bool = False
    strip_color: str = "#000000"
    title: str = ""


def tiles(P: PolygonData, t: Tiling):
    """(kind, center, vertices) for every tile, in a fixed order."""
    out = []
    for n, lev in enumerate(t):
        for x in sorted(lev):
            h = 0.5
            out.append(("red", (x, n), ((x + h, n - 1), (x + h, n), (x - h, n + 1), (x - h, n))))
    for ell in range(1, P.N + 1):
        up = path_positions(P, t[ell], ell)
        down = path_positions(P, t[ell - 1], ell - 1)
        for a, b in zip(up, down):
            if a == b:
                verts = ((a - 0.5, ell - 1), (a + 0.5, ell - 1), (a + 0.5, ell), (a - 0.5, ell))
                out.append(("blue", (a, ell - 0.5), verts))
            else:
                verts = ((a + 0.5, ell - 1), (a + 1.5, ell - 1), (a + 0.5, ell), (a - 0.5, ell))
                out.append(("green", (a + 0.5, ell - 0.5), verts))
    return out


def _num(v: float) -> str:
    r = round(v, 3)
    if r == int(r):
        return str(int(r))
    return f"{r:.3f}".rstrip("0")


def render_svg(P: PolygonData, t: Tiling, style: RenderStyle = RenderStyle()) -> str:
    """Deterministic SVG document for the tiling ``t``."""
    ts = tiles(P, t)
    xs = [vx for _, _, vs in ts for vx, _ in vs]
    ns = [vn for _, _, vs in ts for _, vn in vs]
    x0, x1, n0, n1 = min(xs), max(xs), min(ns), max(ns)
    s, mg = style.scale, style.margin

    def X(x):
        return (x - x0) * s + mg

    def Y(n):
        return (n1 - n) * s + mg

    def pts(vs):
        return " ".join(f"{_num(X(a))},{_num(Y(b))}" for a, b in vs)

    w = _num((x1 - x0) * s + 2 * mg)
    h = _num((n1 - n0) * s + 2 * mg)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    if style.title:
        lines.append(f"<title>{escape(style.title)}</title>")
    for kind in ("red", "blue", "green"):
        color = getattr(style, kind)
        lines.append(f'<g class="{kind}" fill="{color}" stroke="{style.stroke}" '
                     f'stroke-width="{_num(style.stroke_width)}">')
        for k, _, vs in ts:
            if k == kind:
                lines.append(f'<polygon points="{pts(vs)}"/>')
        lines.append("</g>")
    r = _num(style.dot_radius * s)
    for kind, flag in (("red", style.red_dots), ("blue", style.blue_dots)):
        if not flag:
            continue
        lines.append(f'<g class="{kind}-dots" fill="#ffffff" stroke="#000000" stroke-width="{_num(style.stroke_width)}">')
        for k, (cx, cn), _ in ts:
            if k == kind:
                lines.append(f'<circle cx="{_num(X(cx))}" cy="{_num(Y(cn))}" r="{r}"/>')
        lines.append("</g>")
    if style.strips and P.two_cut is not None:
        lines.extend(_strip_lines(P, X, Y, n0, n1, style))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _strip_lines(P, X, Y, n0, n1, style):
    """Dashed guides: oblique lines eta = m1, m1 + rho and vertical lines of the sigma strip."""
    tc = P.two_cut
    out = [f'<g class="strips" fill="none" stroke="{style.strip_color}" '
           f'stroke-width="{_num(style.stroke_width * 2)}" stroke-dasharray="4 3">']
    lo, hi = 0, P.N
    for eta in (tc.m1, tc.m1 + tc.rho):
        # x + n = eta - 1/2
        a, b = (eta - 0.5 - lo, lo), (eta - 0.5 - hi, hi)
        out.append(f'<line x1="{_num(X(a[0]))}" y1="{_num(Y(a[1]))}" x2="{_num(X(b[0]))}" y2="{_num(Y(b[1]))}"/>')
    for x in (tc.n1 - tc.c - 0.5, tc.m1 - tc.d - 0.5):
        out.append(f'<line x1="{_num(X(x))}" y1="{_num(Y(lo))}" x2="{_num(X(x))}" y2="{_num(Y(hi))}"/>')
    out.append("</g>")
    return out


def tile_counts(P: PolygonData, t: Tiling) -> dict:
    out = {"red": 0, "blue": 0, "green": 0}
    for k, _, _ in tiles(P, t):
        out[k] += 1
    return out
