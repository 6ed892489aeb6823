"""Exact residue calculus for rational functions with rational poles.

A :class:`RationalFunction` is ``num(z) / (scale * prod (z - a)^k)``; every
pole is an explicit rational point, so residues (at any order) are finite
Taylor computations and contour integrals are finite sums.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from ._numbers import Q
from .polynomial import UniPoly


class ContourError(ValueError):
    pass


class ResidueCheckError(ArithmeticError):
    """The finite-pole sum and -Res_infinity disagreed (an implementation bug)."""


class RationalFunction:
    __slots__ = ("num", "poles", "scale")

    def __init__(self, num: UniPoly, poles=(), scale=1):
        self.num = num if isinstance(num, UniPoly) else UniPoly([num])
        cnt = Counter()
        if isinstance(poles, dict):
            for a, k in poles.items():
                cnt[Q(a)] += k
        else:
            for a in poles:
                cnt[Q(a)] += 1
        self.poles = {a: k for a, k in cnt.items() if k > 0}
        self.scale = Q(scale)
        if self.scale == 0:
            raise ZeroDivisionError("zero denominator scale")

    def denominator(self) -> UniPoly:
        roots = [a for a, k in self.poles.items() for _ in range(k)]
        return UniPoly.from_roots(roots, lead=self.scale)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            poles = Counter(self.poles)
            poles.update(other.poles)
            return RationalFunction(self.num * other.num, dict(poles), self.scale * other.scale)
        return RationalFunction(self.num * other, self.poles, self.scale)

    __rmul__ = __mul__

    def __call__(self, z):
        den = self.scale
        for a, k in self.poles.items():
            den *= (z - a) ** k
        return self.num(z) / den

    def residue(self, a):
        """Res_{z=a} exactly; 0 if a is not a pole."""
        a = Q(a)
        k = self.poles.get(a, 0)
        if k == 0:
            return Q(0)
        # g(t) = num(a+t) / (scale * prod_{b != a} (a + t - b)^m), need [t^{k-1}] g
        series = self.num.taylor(a, k)
        for b, m in self.poles.items():
            if b == a:
                continue
            inv = _inv_linear_power(a - b, m, k)
            series = _mul_trunc(series, inv, k)
        return series[k - 1] / self.scale

    def residue_at_infinity(self):
        """Res_{z=inf} f = -[z^{-1}] of the expansion at infinity."""
        den = self.denominator()
        _, rem = self.num.divmod(den)
        return -rem.coeff(den.degree - 1) / den.lead()


def _inv_linear_power(c, m, order):
    """Series of (c + t)^{-m} in t up to t^{order-1}."""
    out = []
    base = Q(1) / c ** m
    coef = Q(1)
    for j in range(order):
        out.append(base * coef / c ** j)
        coef = coef * (-(m + j)) / (j + 1)
    return out


def _mul_trunc(a, b, order):
    out = [Q(0)] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j in range(order - i):
                out[i + j] += x * b[j]
    return out


# -- contours ---------------------------------------------------------------------

@dataclass(frozen=True)
class ContourSpec:
    """kind: 'finite_points' | 'all_poles' | 'gamma_tau' | 'x_plus_N'."""

    kind: str
    points: tuple = ()
    x: int = 0

    @classmethod
    def finite(cls, pts: Iterable) -> "ContourSpec":
        return cls("finite_points", tuple(Q(p) for p in pts))

    @classmethod
    def all_poles(cls) -> "ContourSpec":
        return cls("all_poles")

    @classmethod
    def x_plus_N(cls, x: int) -> "ContourSpec":
        return cls("x_plus_N", x=x)

    @classmethod
    def gamma_tau(cls, y: int, n: int, y1: int, N: int) -> "ContourSpec":
        return cls("gamma_tau", tuple(Q(p) for p in gamma_tau_points(y, n, y1, N)))


def gamma_tau_points(y: int, n: int, y1, N: int) -> list:
    """Integer points enclosed by Gamma_tau, tau = (y + n) - (y_1 + 1); empty if tau >= 0."""
    if y1 is None:
        return []
    tau = (y + n) - (y1 + 1)
    if tau >= 0:
        return []
    return list(range(y + n - N, min(y1 - N, y) + 1))


def residue_sum(f: RationalFunction, c: ContourSpec, check: bool = True):
    """(1/2 pi i) * contour integral of f, exactly."""
    if c.kind in ("finite_points", "gamma_tau"):
        return sum((f.residue(p) for p in set(c.points)), Q(0))
    if c.kind == "x_plus_N":
        return sum((f.residue(p) for p in f.poles if p >= c.x and p.denominator == 1), Q(0))
    if c.kind == "all_poles":
        total = sum((f.residue(p) for p in f.poles), Q(0))
        if check:
            inf = f.residue_at_infinity()
            if total != -inf:
                raise ResidueCheckError(f"finite residues {total} != -Res_inf {-inf}")
        return total
    raise ContourError(f"unknown contour kind {c.kind!r}")


def multi_residue_sum(factor: Callable, point_sets, joint: Callable):
    """Iterated residues of prod_a factor(u_a) * joint(u_1..u_k) with simple poles.

    ``factor`` returns a RationalFunction (the same one for every variable);
    the joint part must be a polynomial, so each iterated residue is the
    univariate residue times the joint factor at the pole tuple.
    """
    f = factor
    res_cache = {}
    total = Q(0)
    for tup in product(*point_sets):
        w = Q(1)
        for p in tup:
            if p not in res_cache:
                if f.poles.get(Q(p), 0) > 1:
                    raise ContourError("multi_residue_sum needs simple poles")
                res_cache[p] = f.residue(p)
            w *= res_cache[p]
            if not w:
                break
        if w:
            total += w * joint(tup)
    return total
