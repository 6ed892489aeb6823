"""Blue-dot kernel obtained from the red-dot kernel by a half-step shift.

A blue dot (eta, xi), eta + xi odd, sits at level n = ell - 1/2 with
ell = (eta + xi + 1)/2 and x = eta - ell.  The kernel is

    L(eta, xi; eta', xi') = -K_red(ell - 1, x; ell', x').
"""
from __future__ import annotations

from ._numbers import Q
from .enumeration import Measure, correlation_table, enumerate_tilings
from .geometry import PolygonData, blue_to_lattice, lattice_to_blue
from .kernel_red import red_kernel
from .linalg import det


def blue_points(P: PolygonData):
    """All (eta, xi) where a blue dot can appear: x on both lines ell-1 and ell."""
    out = []
    for ell in range(1, P.N + 1):
        lo = set(P.level_range(ell - 1))
        for x in P.level_range(ell):
            if x in lo:
                out.append(lattice_to_blue(ell, x))
    return out


def L_blue(P: PolygonData, p1, p2, form: str = "r3"):
    ell1, x1 = blue_to_lattice(*p1)
    ell2, x2 = blue_to_lattice(*p2)
    return -red_kernel(P, form)(ell1 - 1, x1, ell2, x2)


def L_blue_correlation(P: PolygonData, pts, form: str = "r3"):
    pts = [tuple(p) for p in pts]
    if not pts:
        return Q(1)
    return det([[L_blue(P, a, b, form) for b in pts] for a in pts])


def verify_blue_kernel(P: PolygonData, max_points: int = 2, measure: Measure | None = None,
                       tilings=None, form: str = "r3"):
    """Max |det L - enumeration| over all blue sets of size <= max_points (exact)."""
    from itertools import combinations

    measure = measure or Measure.uniform()
    if tilings is None:
        tilings = list(enumerate_tilings(P))
    pts = sorted(blue_points(P))
    table = correlation_table(P, measure, "blue", max_points, tilings)
    worst = Q(0)
    checked = 0
    for k in range(1, max_points + 1):
        for s in combinations(pts, k):
            diff = abs(L_blue_correlation(P, s, form) - table.get(s, Q(0)))
            worst = max(worst, diff)
            checked += 1
    return {"checked": checked, "max_discrepancy": worst}


def strip_trace(P: PolygonData, eta: int, form: str = "r3"):
    """Expected number of blue dots on the line eta: sum of L(p, p) over the line."""
    return sum((L_blue(P, p, p, form) for p in blue_points(P) if p[0] == eta), Q(0))


# -- scaling-limit trend (a study, not a check) -------------------------------------

def scaled_two_cut(d: int, r: int, rho: int, gamma: float = 2.0, beta1: float = -0.5,
                   beta2: float = 0.0, gamma1: float = 0.0, gamma2: float = 0.0):
    """Integer two-cut polygon following the large-d scaling, rounded to the lattice."""
    from math import sqrt

    from .geometry import PolygonSpec

    a = 2 * sqrt(gamma / (gamma - 1))
    k = (gamma + 1) / (gamma - 1)
    m1 = round(k * (d + a / 2 * beta1 * sqrt(d) + gamma1))
    m2 = round(k * (d + a / 2 * beta2 * sqrt(d) + gamma2))
    n1, n2 = m1 + (rho - r), m2 - (rho - r)
    return PolygonSpec.two_cut(d, m1, m2, n1, n2, d + r, round(gamma * d)), a


def limit_trend(ds, r: int, rho: int, points, gamma: float = 2.0, beta1: float = -0.5,
                beta2: float = 0.0, form: str = "r3"):
    """Conjugated, rescaled L_blue at growing d next to the limit kernel.

    ``points`` holds (tau1, dxi1, tau2, dxi2): offsets from the origin on the
    left strip boundary, with the xi offsets integer and eta + xi odd.  Each row
    reports the theta values these offsets correspond to, the scaled finite-d
    value and the tacnode kernel there.  The overall normalization of the limit
    is not fixed here, so the useful output is the trend of the ratio column.
    """
    from math import sqrt

    from .geometry import build_polygon
    from .tacnode import TacParams, L_dtac

    beta = -beta1 - beta2
    p = TacParams(r, rho, beta)
    rows = []
    for d in ds:
        spec, a = scaled_two_cut(d, r, rho, gamma, beta1, beta2)
        P = build_polygon(spec)
        tc = P.two_cut
        eta0, xi0 = tc.m1, P.N - tc.m1 - 1
        scale = (gamma + 1) / a * sqrt(d)
        for t1, dx1, t2, dx2 in points:
            e1, x1 = eta0 + t1, xi0 + dx1
            e2, x2 = eta0 + t2, xi0 + dx2
            if (e1 + x1) % 2 == 0 or (e2 + x2) % 2 == 0:
                raise ValueError("offsets must keep eta + xi odd")
            th1, th2 = dx1 / scale - beta2, dx2 / scale - beta2
            val = float(L_blue(P, (e1, x1), (e2, x2), form))
            sign = (-1) ** (((e1 + x1 - e2 - x2) // 2) % 2)
            # (1/2) dxi2 per lattice step on one eta line is 1, d theta2 is 2/scale
            scaled = sign * (sqrt(d) * (gamma + 1) / (2 * a)) ** (e2 - e1) * val * scale / 2
            lim = L_dtac(t1, th1, t2, th2, p)
            rows.append({"d": d, "tau1": t1, "theta1": th1, "tau2": t2, "theta2": th2,
                         "scaled": scaled, "limit": lim, "ratio": scaled / lim if lim else float("nan")})
    return rows
