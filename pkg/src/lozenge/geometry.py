"""Cut-hexagon geometry: coordinates, validation and derived integer data.

Conventions (x grows to the right, levels n = 0..N upwards):

* On the bottom line the integer points of the enlarged trapezoid run over
  ``-d, ..., M-1`` with ``M = sum(lower_gaps)``; reading left to right they
  are grouped as ``m_1, d_1, m_2, ..., d_l, m_{l+1}``.  The cut points are the
  fixed dots ``y_1 > ... > y_d``; they are continued by the consecutive
  virtual points ``y_{d+j} = -d-j``.
* On the top line the points run over ``-d-N, ..., M-1`` grouped as
  ``b_0, n_1, b_1, ..., b_{u-1}, n_u, b_u``.  The ``b`` blocks are the fixed
  dots ``x_1 > ... > x_{d+N}``.
* Line n = k of the trapezoid covers ``-d-k, ..., M-1`` and carries ``d+k``
  dots.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


class PolygonSpecError(ValueError):
    """Raised when a polygon specification violates a constraint."""


@dataclass(frozen=True)
class PolygonSpec:
    lower_cuts: tuple
    lower_gaps: tuple
    upper_cuts: tuple
    upper_gaps: tuple
    b0: int
    bu: int
    d0: int

    @classmethod
    def from_dict(cls, obj: dict) -> "PolygonSpec":
        keys = ("lower_cuts", "lower_gaps", "upper_cuts", "upper_gaps", "b0", "bu", "d0")
        if not isinstance(obj, dict):
            raise PolygonSpecError("polygon spec must be a JSON object")
        for k in keys:
            if k not in obj:
                raise PolygonSpecError(f"missing field '{k}'")
        extra = set(obj) - set(keys)
        if extra:
            raise PolygonSpecError(f"unknown field '{sorted(extra)[0]}'")

        def ints(name, seq):
            if not isinstance(seq, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in seq):
                raise PolygonSpecError(f"field '{name}' must be a list of integers")
            return tuple(seq)

        def one(name):
            v = obj[name]
            if not isinstance(v, int) or isinstance(v, bool):
                raise PolygonSpecError(f"field '{name}' must be an integer")
            return v

        return cls(
            ints("lower_cuts", obj["lower_cuts"]),
            ints("lower_gaps", obj["lower_gaps"]),
            ints("upper_cuts", obj["upper_cuts"]),
            ints("upper_gaps", obj["upper_gaps"]),
            one("b0"), one("bu"), one("d0"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PolygonSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolygonSpecError(f"malformed JSON: {exc.msg} (line {exc.lineno})") from None
        return cls.from_dict(obj)

    def to_dict(self) -> dict:
        return {
            "lower_cuts": list(self.lower_cuts), "lower_gaps": list(self.lower_gaps),
            "upper_cuts": list(self.upper_cuts), "upper_gaps": list(self.upper_gaps),
            "b0": self.b0, "bu": self.bu, "d0": self.d0,
        }

    @classmethod
    def hexagon(cls, a: int, b: int, c: int) -> "PolygonSpec":
        """Plain hexagon with sides a (bottom/top), b (left triangle), c."""
        return cls((), (a,), (), (a,), b, c, c)

    @classmethod
    def two_cut(cls, d, m1, m2, n1, n2, b, c) -> "PolygonSpec":
        """Hexagon with one cut of size d on the bottom and one on the top."""
        return cls((d,), (m1, m2), (d,), (n1, n2), b, c, c)


@dataclass(frozen=True)
class TwoCutData:
    d: int
    m1: int
    m2: int
    n1: int
    n2: int
    b: int
    c: int
    rho: int
    sigma: int
    strips_separated: bool  # strict form of the two-cut inequality chain


@dataclass(frozen=True)
class PolygonData:
    spec: PolygonSpec
    N: int
    d: int
    M: int                 # sum of the lower gaps = sum of the upper gaps
    y: tuple               # y_1 > ... > y_{d+N}
    x: tuple               # x_1 > ... > x_{d+N}
    L: tuple
    C: tuple
    R: tuple
    G: tuple
    r: int
    g: int
    P_roots: tuple
    upper_cut_points: tuple
    two_cut: Optional[TwoCutData] = field(default=None)

    @property
    def y_cut(self) -> tuple:
        return self.y[: self.d]

    @property
    def Q_roots(self) -> tuple:
        return self.x

    def level_range(self, k: int) -> range:
        """Integer positions of line n = k inside the trapezoid."""
        return range(-self.d - k, self.M)

    def lattice_points(self):
        return [(k, xx) for k in range(self.N + 1) for xx in self.level_range(k)]

    def summary(self) -> dict:
        out = {"N": self.N, "d": self.d, "r": self.r, "g": self.g,
               "|L|": len(self.L), "|C|": len(self.C), "|R|": len(self.R)}
        if self.two_cut is not None:
            out["rho"] = self.two_cut.rho
            out["sigma"] = self.two_cut.sigma
        return out


def build_polygon(spec: PolygonSpec) -> PolygonData:
    """Validate ``spec`` and derive every integer datum used downstream."""
    lc, lg, uc, ug = spec.lower_cuts, spec.lower_gaps, spec.upper_cuts, spec.upper_gaps
    if len(lg) != len(lc) + 1:
        raise PolygonSpecError("need exactly one more lower gap than lower cuts")
    if len(ug) != len(uc) + 1:
        raise PolygonSpecError("need exactly one more upper gap than upper cuts")
    for name, seq in (("lower_cuts", lc), ("lower_gaps", lg), ("upper_cuts", uc), ("upper_gaps", ug)):
        if any(v <= 0 for v in seq):
            raise PolygonSpecError(f"entries of '{name}' must be positive")
    for name in ("b0", "bu", "d0"):
        if getattr(spec, name) < 0:
            raise PolygonSpecError(f"'{name}' must be non-negative")
    d = sum(lc)
    N = spec.b0 + spec.d0
    if N < 1:
        raise PolygonSpecError("N = b0 + d0 must be at least 1")
    M = sum(lg)
    if M != sum(ug):
        raise PolygonSpecError(f"sum of lower gaps ({M}) != sum of upper gaps ({sum(ug)})")
    bsum = spec.b0 + sum(uc) + spec.bu
    if bsum != d + N:
        raise PolygonSpecError(f"b0 + upper cuts + bu = {bsum} != d + N = {d + N}")

    pos = -d
    ycut = []
    for i, m in enumerate(lg):
        pos += m
        if i < len(lc):
            ycut.extend(range(pos, pos + lc[i]))
            pos += lc[i]
    assert pos == M
    y = tuple(sorted(ycut, reverse=True)) + tuple(-d - j for j in range(1, N + 1))

    pos = -d - N
    xs = list(range(pos, pos + spec.b0))
    pos += spec.b0
    upper_pts = []
    for i, n_ in enumerate(ug):
        pos += n_
        blk = spec.bu if i == len(uc) else uc[i]
        pts = range(pos, pos + blk)
        xs.extend(pts)
        if i < len(uc):
            upper_pts.extend(pts)
        pos += blk
    assert pos == M
    x = tuple(sorted(xs, reverse=True))

    for i, (xi, yi) in enumerate(zip(x, y), start=1):
        if xi < yi:
            raise PolygonSpecError(f"x_{i} = {xi} < y_{i} = {yi}")

    if d > 0:
        y1, yd = y[0], y[d - 1]
        if y1 - yd > N - 1:
            raise PolygonSpecError(f"y_1 - y_d = {y1 - yd} > N - 1 = {N - 1}")
        if yd in upper_pts:
            raise PolygonSpecError(f"y_d = {yd} lies in an upper-cut column")
        L = tuple(v for v in x if v < y1 - N + 1)
        R = tuple(v for v in x if v >= yd)
        C = tuple(v for v in x if y1 - N + 1 <= v < yd)
        window = tuple(range(yd - 1, y1 - N, -1))
        G = tuple(v for v in window if v not in C)
        P_roots = window
        g = y1 - yd - d + 1
    else:
        # no lower cut: everything is "right", P = 1
        L, C, G, R, P_roots, g = (), (), (), x, (), 0
    r = len(L) - d
    if r < 0:
        raise PolygonSpecError(f"r = |L| - d = {r} < 0")

    tc = None
    if len(lc) == 1 and len(uc) == 1 and uc[0] == d and spec.bu == spec.d0:
        m1, m2 = lg
        n1, n2 = ug
        b, c = spec.b0, spec.bu
        rho = n1 - m1 + b - d
        sigma = m1 - n1 + c - d
        if rho < 0 or sigma < 0:
            raise PolygonSpecError(f"two-cut strip widths must be >= 0 (rho={rho}, sigma={sigma})")
        # The strict outer inequalities only say that the strips avoid the
        # boundary; the reference two-cut example touches it, so this is
        # recorded rather than enforced.
        separated = max(-n2, -m1) < d - b and c - d < min(m2, n1)
        tc = TwoCutData(d, m1, m2, n1, n2, b, c, rho, sigma, separated)

    return PolygonData(spec, N, d, M, y, x, L, C, R, G, r, g, P_roots, tuple(upper_pts), tc)


def load_polygon(text: str) -> PolygonData:
    return build_polygon(PolygonSpec.from_json(text))


# -- coordinates -----------------------------------------------------------

def to_oblique(n, x):
    """(n, x) -> (eta, xi) = (n + x + 1/2, n - x - 1/2), exact."""
    n, x = Fraction(n), Fraction(x)
    return n + x + Fraction(1, 2), n - x - Fraction(1, 2)


def from_oblique(eta, xi):
    eta, xi = Fraction(eta), Fraction(xi)
    return (eta + xi) / 2, (eta - xi - 1) / 2


def blue_to_lattice(eta: int, xi: int):
    """Blue dot (eta, xi), eta + xi odd -> (level ell, x) with n = ell - 1/2."""
    if (eta + xi) % 2 == 0:
        raise ValueError(f"({eta},{xi}) is not on the blue lattice: eta + xi must be odd")
    ell = (eta + xi + 1) // 2
    return ell, eta - ell


def lattice_to_blue(ell: int, x: int):
    """Blue dot at (n = ell - 1/2, x) -> (eta, xi)."""
    return x + ell, ell - x - 1
