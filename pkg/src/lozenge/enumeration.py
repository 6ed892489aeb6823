"""Brute-force ground truth: tilings as interlacing arrays, measures, correlations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ._numbers import Q
from .geometry import PolygonData, lattice_to_blue
from .symfunc import h_geom
from .linalg import det

DEFAULT_CAP = 2_000_000


class EnumerationCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class Measure:
    """kind 'uniform' or 'q' (with an exact rational q in (0, 1])."""

    kind: str = "uniform"
    q: object = None

    @classmethod
    def uniform(cls) -> "Measure":
        return cls("uniform", None)

    @classmethod
    def qmeasure(cls, q) -> "Measure":
        q = Q(q)
        if not 0 < q <= 1:
            raise ValueError("q must lie in (0, 1]")
        return cls("uniform", None) if q == 1 else cls("q", q)


Tiling = tuple  # levels x^(0), ..., x^(N); each a tuple of d + k decreasing ints


def level_bounds(P: PolygonData, prev, k: int):
    """Admissible ranges for x^(k) entries given x^(k-1) and the fixed top."""
    N, top = P.N, P.x
    s = N - k
    n = P.d + k
    lo, hi = [], []
    for i in range(n):  # 0-based i
        low = top[i + s] + s
        if i < n - 1:
            low = max(low, prev[i])
        high = top[i]
        if i > 0:
            high = min(high, prev[i - 1] - 1)
        lo.append(low)
        hi.append(high)
    return lo, hi


def _levels_from(P, prev, k, lo, hi) -> Iterator[tuple]:
    n = len(lo)
    cur = [0] * n

    def rec(i):
        if i == n:
            yield tuple(cur)
            return
        top_i = hi[i]
        if i > 0:
            top_i = min(top_i, cur[i - 1] - 1)
        for v in range(lo[i], top_i + 1):
            cur[i] = v
            yield from rec(i + 1)

    yield from rec(0)


def enumerate_tilings(P: PolygonData, cap: int = DEFAULT_CAP) -> Iterator[Tiling]:
    """Every tiling exactly once, level by level (depth first)."""
    N = P.N
    base = tuple(P.y[: P.d])
    count = 0

    def rec(levels):
        nonlocal count
        k = len(levels)
        if k == N + 1:
            count += 1
            if count > cap:
                raise EnumerationCapError(f"more than {cap} tilings")
            yield levels
            return
        if k == N:
            lo, hi = level_bounds(P, levels[-1], k)
            if all(a <= t <= b for a, t, b in zip(lo, P.x, hi)):
                yield from rec(levels + (tuple(P.x),))
            return
        lo, hi = level_bounds(P, levels[-1], k)
        for lev in _levels_from(P, levels[-1], k, lo, hi):
            yield from rec(levels + (lev,))

    yield from rec((base,))


def is_interlacing(P: PolygonData, t: Tiling) -> bool:
    if len(t) != P.N + 1 or tuple(t[0]) != tuple(P.y[: P.d]) or tuple(t[-1]) != tuple(P.x):
        return False
    for k in range(1, P.N + 1):
        a, b = t[k - 1], t[k]
        if len(b) != P.d + k or len(a) != P.d + k - 1:
            return False
        if b[-1] < -P.d - k or b[0] > P.M - 1:
            return False
        for i in range(len(a)):
            if not (b[i + 1] < a[i] <= b[i]):
                return False
    return True


def volume(t: Tiling) -> int:
    """sum_{i=1}^{N-1} |nu^(i)| - (N-1)|nu^(0)| with nu_j = x_j + j."""
    N = len(t) - 1

    def nu(lev):
        return sum(v + j for j, v in enumerate(lev, start=1))

    return sum(nu(t[i]) for i in range(1, N)) - (N - 1) * nu(t[0])


def normalizer(P: PolygonData, m: Measure):
    """s_{lambda/mu}(q^{1-N}, ..., q^0) (the tiling count when q = 1)."""
    q = Q(1) if m.kind == "uniform" else m.q
    return det([[h_geom(xi - yj, 1 - P.N, 0, q) for yj in P.y] for xi in P.x])


def weight(P: PolygonData, t: Tiling, m: Measure, norm=None):
    """Exact probability of the tiling under ``m``."""
    if norm is None:
        norm = normalizer(P, m)
    if m.kind == "uniform":
        return Q(1) / norm
    return m.q ** (-volume(t)) / norm


def red_points(t: Tiling):
    return [(k, v) for k, lev in enumerate(t) for v in lev]


def red_correlation(P: PolygonData, m: Measure, pts, tilings=None):
    """Prob(all points occupied by red dots), summed over the enumeration."""
    pts = [tuple(p) for p in pts]
    if tilings is None:
        tilings = list(enumerate_tilings(P))
    norm = normalizer(P, m)
    total = Q(0)
    for t in tilings:
        if all(p[1] in t[p[0]] for p in pts):
            total += weight(P, t, m, norm)
    return total


# -- blue dots ----------------------------------------------------------------------

def path_positions(P: PolygonData, lev, k: int):
    """Positions on line n = k not occupied by red dots (where level lines cross)."""
    occ = set(lev)
    return [p for p in P.level_range(k) if p not in occ]


def blue_lattice_dots(P: PolygonData, t: Tiling):
    """Blue dots as (ell, x): the level line between lines ell-1 and ell goes straight down at x."""
    out = []
    for ell in range(1, P.N + 1):
        up = path_positions(P, t[ell], ell)
        down = path_positions(P, t[ell - 1], ell - 1)
        if len(up) != len(down):
            raise AssertionError("path count changed between levels")
        for a, b in zip(up, down):
            if b == a:
                out.append((ell, a))
            elif b != a + 1:
                raise AssertionError("level line step is neither straight nor oblique")
    return out


def blue_dots(P: PolygonData, t: Tiling):
    """Blue dots in oblique coordinates (eta, xi)."""
    return [lattice_to_blue(ell, x) for ell, x in blue_lattice_dots(P, t)]


def blue_counts_per_eta(P: PolygonData, t: Tiling) -> dict:
    out = {}
    for eta, _ in blue_dots(P, t):
        out[eta] = out.get(eta, 0) + 1
    return out


def blue_correlation(P: PolygonData, m: Measure, pts, tilings=None):
    pts = [tuple(p) for p in pts]
    if tilings is None:
        tilings = list(enumerate_tilings(P))
    norm = normalizer(P, m)
    total = Q(0)
    for t in tilings:
        bd = set(blue_dots(P, t))
        if all(p in bd for p in pts):
            total += weight(P, t, m, norm)
    return total


def correlation_table(P: PolygonData, m: Measure, kind: str = "red", max_points: int = 2, tilings=None) -> dict:
    """Exact Prob(all points of S occupied) for every S of size 1..max_points in one pass.

    Keys are sorted tuples of points; sets that never occur are absent (probability 0).
    """
    from itertools import combinations

    if tilings is None:
        tilings = enumerate_tilings(P)
    dots = red_points if kind == "red" else (lambda t: blue_dots(P, t))
    if kind not in ("red", "blue"):
        raise ValueError("kind must be 'red' or 'blue'")
    norm = normalizer(P, m)
    table = {}
    for t in tilings:
        w = weight(P, t, m, norm)
        pts = sorted(dots(t))
        for k in range(1, max_points + 1):
            for s in combinations(pts, k):
                table[s] = table.get(s, Q(0)) + w
    return table


def two_cut_blue_profile(P: PolygonData) -> dict:
    """Deterministic blue count per eta-line for the two-cut model (piecewise linear table)."""
    tc = P.two_cut
    if tc is None:
        raise ValueError("not a two-cut polygon")
    d, b, m1, n1, n2, rho = tc.d, tc.b, tc.m1, tc.n1, tc.n2, tc.rho
    r = b - d
    knots = [(-d, 0), (b - d, b), (m1 - d, b), (m1, r), (m1 + rho, r), (n1 + b, b), (n1 + n2, b), (n1 + n2 + b, 0)]
    if any(e1 < e0 for (e0, _), (e1, _) in zip(knots, knots[1:])):
        raise ValueError("two-cut blue table needs b <= m1 and the strip ordering of the reference geometry")
    prof = {}
    for (e0, v0), (e1, v1) in zip(knots, knots[1:]):
        for e in range(e0, e1 + 1):
            if e1 == e0:
                prof[e] = v1
            else:
                prof[e] = v0 + (v1 - v0) * (e - e0) // (e1 - e0)
    return prof


# -- skew tableaux --------------------------------------------------------------------

def to_skew_tableau(t: Tiling):
    """Row lists of the skew tableau of shape lambda/mu: boxes of nu^(k) / nu^(k-1) get label k."""
    n = len(t[-1])

    def nu(lev):
        lev = list(lev)
        return [(lev[i] + i + 1) if i < len(lev) else 0 for i in range(n)]

    rows = [[] for _ in range(n)]
    prev = nu(t[0])
    for k in range(1, len(t)):
        cur = nu(t[k])
        for i in range(n):
            if cur[i] < prev[i]:
                raise ValueError("levels are not nested")
            rows[i].extend([k] * (cur[i] - prev[i]))
        prev = cur
    return rows


def from_skew_tableau(rows, mu, N: int):
    """Inverse of :func:`to_skew_tableau` given the inner shape mu (as nu^(0), padded) and N."""
    n = len(rows)
    mu = list(mu) + [0] * (n - len(mu))
    levels = []
    for k in range(0, N + 1):
        nu = [mu[i] + sum(1 for v in rows[i] if v <= k) for i in range(n)]
        size = n - N + k
        levels.append(tuple(nu[i] - (i + 1) for i in range(size)))
    return tuple(levels)


def is_horizontal_strip(outer, inner) -> bool:
    """outer/inner is a horizontal strip iff outer_1 >= inner_1 >= outer_2 >= inner_2 >= ..."""
    n = max(len(outer), len(inner))
    o = list(outer) + [0] * (n - len(outer))
    i_ = list(inner) + [0] * (n - len(inner))
    return all(o[j] >= i_[j] for j in range(n)) and all(i_[j] >= o[j + 1] for j in range(n - 1))
