"""Dense exact linear algebra over the rationals (lists of lists)."""
from __future__ import annotations

from ._numbers import Q


class SingularMatrixError(ArithmeticError):
    pass


def det(rows) -> object:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Q(v) for v in row] for row in rows]
    n = len(a)
    if n == 0:
        return Q(1)
    sign = 1
    out = Q(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Q(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pc = a[c][c]
        out *= pc
        rowc = a[c]
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f / pc
                rowr = a[r]
                for k in range(c + 1, n):
                    rowr[k] -= f * rowc[k]
    return out * sign


def inverse(rows):
    """Exact inverse via Gauss-Jordan; raises SingularMatrixError."""
    n = len(rows)
    a = [[Q(v) for v in row] + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        rowc = a[c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [vr - f * vc for vr, vc in zip(a[r], rowc)]
    return [row[n:] for row in a]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n: int):
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def diag(vals):
    n = len(vals)
    return [[Q(vals[i]) if i == j else Q(0) for j in range(n)] for i in range(n)]


def is_identity(a) -> bool:
    return all(a[i][j] == (1 if i == j else 0) for i in range(len(a)) for j in range(len(a)))
