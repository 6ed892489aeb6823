"""Named polygons used by the tests, the acceptance suite and the CLI."""
from __future__ import annotations

from .geometry import PolygonSpec

PRESETS = {
    "hex111": PolygonSpec.hexagon(1, 1, 1),
    "hex222": PolygonSpec.hexagon(2, 2, 2),
    "hex333": PolygonSpec.hexagon(3, 3, 3),
    # two-cut polygon with d = 1, N = 5 (the reference two-cut shape scaled down)
    "two-cut-small": PolygonSpec.two_cut(1, 2, 3, 3, 2, 2, 3),
    # two lower cuts of size 1 separated by one gap (g = 1), no upper cut
    "multicut-g1": PolygonSpec((1, 1), (1, 1, 1), (), (3,), 3, 3, 1),
    # reference two-cut shape: N = 10, r = 1, rho = 2, sigma = 4
    "fig4": PolygonSpec.two_cut(2, 4, 6, 5, 5, 3, 7),
    # large two-cut shape for pictures: n1=105, n2=95, m1=m2=100, b=25, c=30, d=20
    "fig5": PolygonSpec.two_cut(20, 100, 100, 105, 95, 25, 30),
}
