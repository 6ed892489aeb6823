"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from ._numbers import Q


class UniPoly:
    """Polynomial sum_k c[k] z^k; coefficients stored low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Q(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def const(cls, v):
        return cls([v])

    @classmethod
    def monomial(cls, k: int, coef=1):
        return cls([0] * k + [coef])

    @classmethod
    def from_roots(cls, roots, lead=1):
        """lead * prod (z - a) over the root list."""
        c = [Q(lead)]
        for a in roots:
            a = Q(a)
            nxt = [Q(0)] * (len(c) + 1)
            for i, v in enumerate(c):
                nxt[i + 1] += v
                nxt[i] -= a * v
            c = nxt
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lead(self):
        return self.c[-1] if self.c else Q(0)

    def coeff(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else Q(0)

    def is_zero(self) -> bool:
        return not self.c

    def __call__(self, z):
        out = Q(0) if not isinstance(z, complex) else 0j
        for v in reversed(self.c):
            out = out * z + v
        return out

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.c), len(other.c))
        return UniPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-v for v in self.c])

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if not self.c or not other.c:
            return UniPoly()
        out = [Q(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return self.c == _lift(other).c

    def __hash__(self):
        return hash(tuple(self.c))

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dd = other.degree
        lc = other.lead()
        if len(rem) - 1 < dd:
            return UniPoly(), UniPoly(rem)
        quo = [Q(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            f = rem[k] / lc
            quo[k - dd] = f
            if f:
                for j, b in enumerate(other.c):
                    rem[k - dd + j] -= f * b
        return UniPoly(quo), UniPoly(rem[:dd])

    def divexact(self, other: "UniPoly") -> "UniPoly":
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return quo

    def deriv(self) -> "UniPoly":
        return UniPoly([k * v for k, v in enumerate(self.c)][1:])

    def taylor(self, a, order: int):
        """Coefficients of the expansion in t = z - a, up to t^(order-1)."""
        c = list(self.c)
        out = []
        # repeated synthetic division
        for _ in range(min(order, len(c))):
            acc = Q(0)
            nxt = []
            for v in reversed(c):
                acc = acc * a + v
                nxt.append(acc)
            out.append(nxt[-1])
            c = list(reversed(nxt[:-1]))
        out.extend([Q(0)] * (order - len(out)))
        return out

    def __repr__(self):
        if not self.c:
            return "UniPoly(0)"
        terms = []
        for k, v in enumerate(self.c):
            if v:
                terms.append(f"{v}" if k == 0 else f"{v}*z^{k}")
        return "UniPoly(" + " + ".join(terms) + ")"


def _lift(v) -> UniPoly:
    return v if isinstance(v, UniPoly) else UniPoly([v])


def prod_excluding(z, roots, skip=()):
    """prod_{a in roots, a not in skip} (z - a) evaluated at a scalar."""
    out = 1
    for a in roots:
        if a not in skip:
            out *= z - a
    return out
