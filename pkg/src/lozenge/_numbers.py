"""Exact rational scalar type and small integer helpers.

gmpy2's ``mpq`` is used when importable (it is an order of magnitude faster
than :class:`fractions.Fraction`); otherwise Fraction is the fallback.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

try:
    from gmpy2 import mpq as _mpq

    def Q(num=0, den=1):
        if isinstance(num, Fraction):
            return _mpq(num.numerator, num.denominator) / den
        if isinstance(num, str):
            return _mpq(num) / den
        return _mpq(num, den)

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    def Q(num=0, den=1):
        if isinstance(num, str):
            return Fraction(num) / den
        return Fraction(num, den)

    RATIONAL_BACKEND = "fractions"

ZERO = Q(0)
ONE = Q(1)


def parse_rational(text: str):
    """Parse ``"a/b"``, an integer or a decimal string into an exact rational."""
    f = Fraction(str(text).strip())
    return Q(f.numerator, f.denominator)


def frac_str(v) -> str:
    """Canonical ``num/den`` string (denominator always printed)."""
    v = Q(v)
    return f"{v.numerator}/{v.denominator}"


@lru_cache(maxsize=None)
def fact(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return factorial(n)


def rising(a, n: int):
    """Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ValueError("rising factorial needs n >= 0")
    out = 1
    for k in range(n):
        out *= a + k
    return out


def vandermonde(xs) -> object:
    """Delta(x) = prod_{i<j} (x_i - x_j)."""
    out = 1
    n = len(xs)
    for i in range(n):
        xi = xs[i]
        for j in range(i + 1, n):
            out *= xi - xs[j]
    return out
