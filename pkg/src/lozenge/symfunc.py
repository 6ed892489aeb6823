"""Symmetric functions, Pochhammer symbols and q-calculus, all exact.

The gap polynomial E_g is produced in the elementary basis sigma_1..sigma_d
(sigma_i = e_i(x)); it converts exactly to and from the power-sum basis,
which is the basis in which the complementary transform acts.
"""
from __future__ import annotations

from itertools import combinations, permutations
from math import comb

from ._numbers import Q, fact, rising, vandermonde
from .linalg import det
from .polynomial import UniPoly

MAX_SYM_VARS = 6


# -- Pochhammer / h -----------------------------------------------------------

def pochhammer(k, N: int):
    """Rising factorial (k)_N."""
    return rising(k, N)


def h_ones(r: int, n: int) -> int:
    """h_r(1^n) = C(r+n-1, n-1) for r >= 0, else 0."""
    if r < 0:
        return 0
    if n == 0:
        return int(r == 0)
    return comb(r + n - 1, n - 1)


def qpoch(a, q, n: int):
    """(a;q)_n = prod_{i=0}^{n-1} (1 - a q^i)."""
    out = Q(1)
    t = Q(a)
    for _ in range(n):
        out *= 1 - t
        t *= q
    return out


def calP(n: int, z, q):
    """prod_{i=1}^n (1 - z q^i)/(1 - q^i) for 0 < q < 1."""
    q = Q(q)
    if q == 1:
        raise ValueError("calP at q=1 is a 0/0 form; use calP_exp")
    out = Q(1)
    qi = Q(1)
    z = Q(z)
    for _ in range(n):
        qi *= q
        out *= (1 - z * qi) / (1 - qi)
    return out


def calP_exp(n: int, x: int, q):
    """calP_n(q^x); at q = 1 this is the limit (x+1)_n / n!."""
    q = Q(q)
    if q == 1:
        return Q(rising(x + 1, n), fact(n))
    return calP(n, q ** x, q)


def calP_tilde(n: int, y: int, x: int, q, d: int):
    """q^{-dy} calP_n(q^x q^{-y}); at q = 1 the limit (x-y+1)_n / n!."""
    q = Q(q)
    if q == 1:
        return Q(rising(x - y + 1, n), fact(n))
    return q ** (-d * y) * calP(n, q ** (x - y), q)


def h_q(r: int, d: int, n: int, q):
    """h_r(q^d, ..., q^{d+n}) (n+1 variables) = q^{rd} calP_n(q^r) 1_{r>=0}."""
    return h_geom(r, d, d + n, q)


def h_geom(r: int, lo: int, hi: int, q):
    """h_r(q^lo, q^{lo+1}, ..., q^hi); the empty alphabet (hi = lo-1) gives delta_{r,0}."""
    q = Q(q)
    if r < 0:
        return Q(0)
    n = hi - lo + 1
    if n < 0:
        raise ValueError("negative alphabet length")
    if n == 0:
        return Q(int(r == 0))
    if q == 1:
        return Q(h_ones(r, n))
    return q ** (r * lo) * calP(n - 1, q ** r, q)


# -- skew Schur -----------------------------------------------------------------

def _partition_to_x(lam, length):
    lam = list(lam) + [0] * (length - len(lam))
    return [lam[i] - (i + 1) for i in range(length)]


def skew_schur_ones(lam, mu, N: int) -> int:
    """s_{lam/mu}(1^N) by Jacobi-Trudi."""
    return int(_skew(lam, mu, lambda r: Q(h_ones(r, N))))


def skew_schur_q(lam, mu, q, N: int):
    """s_{lam/mu}(q^{1-N}, ..., q^0) by Jacobi-Trudi."""
    return _skew(lam, mu, lambda r: h_geom(r, 1 - N, 0, q))


def _skew(lam, mu, h):
    n = max(len(lam), len(mu))
    lam = list(lam) + [0] * (n - len(lam))
    mu = list(mu) + [0] * (n - len(mu))
    if any(m > l for l, m in zip(lam, mu)):
        raise ValueError("mu is not contained in lambda")
    xs = _partition_to_x(lam, n)
    ys = _partition_to_x(mu, n)
    return det([[h(xi - yj) for yj in ys] for xi in xs])


def count_by_jacobi_trudi(x, y, N: int) -> int:
    """det(h_{x_i - y_j}(1^N)) for the top/bottom coordinate lists."""
    return int(det([[Q(h_ones(xi - yj, N)) for yj in y] for xi in x]))


def macmahon(a: int, b: int, c: int) -> int:
    """Number of lozenge tilings of the (a, b, c) hexagon."""
    num, den = 1, 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                num *= i + j + k - 1
                den *= i + j + k - 2
    assert num % den == 0
    return num // den


# -- symmetric polynomials ----------------------------------------------------

def _add_into(acc, key, v):
    s = acc.get(key, 0) + v
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class _Basis:
    """Polynomial ring Q[g_1..g_d] stored as {exponent tuple: coefficient}."""

    symbol = "g"

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        for k, v in (terms or {}).items():
            if v:
                self.terms[tuple(k)] = Q(v)

    def _new(self, terms):
        return type(self)(self.nvars, terms)

    @classmethod
    def const(cls, nvars, v):
        return cls(nvars, {(0,) * nvars: v})

    @classmethod
    def gen(cls, nvars, i, coef=1):
        """The generator g_i (1-based); g_0 = 1; g_i = 0 for i < 0."""
        if i == 0:
            return cls.const(nvars, coef)
        if i < 0 or i > nvars:
            return cls(nvars)
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): coef})

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(acc, k, v)
        return self._new(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        acc = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                _add_into(acc, tuple(a + b for a, b in zip(k1, k2)), v1 * v2)
        return self._new(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def _lift(self, other):
        if isinstance(other, _Basis):
            if type(other) is not type(self) or other.nvars != self.nvars:
                raise TypeError("mixing symmetric-polynomial bases")
            return other
        return self.const(self.nvars, other)

    def __eq__(self, other):
        try:
            return self.terms == self._lift(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def substitute(self, values):
        """Evaluate with g_i -> values[i-1]; values may be any ring elements."""
        out = None
        cache = {}
        for k, v in self.terms.items():
            term = v
            for i, e in enumerate(k):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = values[i] ** e
                    term = term * cache[key]
            out = term if out is None else out + term
        return Q(0) if out is None else out

    def total_weight(self) -> int:
        """Largest weighted degree sum_i i*e_i (degree in the underlying x's)."""
        return max((sum((i + 1) * e for i, e in enumerate(k)) for k in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda k: (sum((i + 1) * e for i, e in enumerate(k)), k))
        parts = []
        for k in order:
            mono = "*".join(
                f"{self.symbol}{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            c = self.terms[k]
            cs = f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            parts.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(parts)

    __repr__ = __str__


class PowerSumPoly(_Basis):
    """Symmetric polynomial as a polynomial in the power sums p_1..p_d."""

    symbol = "p"

    def evaluate(self, xs):
        return self.substitute([sum((Q(v) ** a for v in xs), Q(0)) for a in range(1, self.nvars + 1)])

    def to_sigma(self) -> "SymPoly":
        d = self.nvars
        ps = [_power_sum_in_sigma(d, a) for a in range(1, d + 1)]
        out = self.substitute(ps) if self.terms else SymPoly(d)
        return out if isinstance(out, SymPoly) else SymPoly.const(d, out)


class SymPoly(_Basis):
    """Symmetric polynomial in d variables, elementary basis s_i = e_i(x)."""

    symbol = "s"

    @property
    def d(self) -> int:
        return self.nvars

    def evaluate(self, xs):
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} variables, got {len(xs)}")
        return self.substitute(elementary(xs)[1:])

    def to_power_sums(self) -> PowerSumPoly:
        d = self.nvars
        es = [_elementary_in_p(d, k) for k in range(1, d + 1)]
        out = self.substitute(es) if self.terms else PowerSumPoly(d)
        return out if isinstance(out, PowerSumPoly) else PowerSumPoly.const(d, out)


def elementary(xs):
    """[e_0, e_1, ..., e_n] of the list xs (exact)."""
    e = [Q(1)] + [Q(0)] * len(xs)
    for k, v in enumerate(xs, start=1):
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e


_P_CACHE = {}
_E_CACHE = {}


def _elementary_in_p(d, k) -> PowerSumPoly:
    """Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i."""
    key = (d, k)
    if key not in _E_CACHE:
        if k == 0:
            val = PowerSumPoly.const(d, 1)
        else:
            acc = PowerSumPoly(d)
            for i in range(1, k + 1):
                acc = acc + _elementary_in_p(d, k - i) * PowerSumPoly.gen(d, i, (-1) ** (i - 1))
            val = acc * Q(1, k)
        _E_CACHE[key] = val
    return _E_CACHE[key]


def _power_sum_in_sigma(d, a) -> SymPoly:
    """Newton: p_a = sum_{i=1}^{a-1} (-1)^{i-1} e_i p_{a-i} + (-1)^{a-1} a e_a."""
    key = (d, a)
    if key not in _P_CACHE:
        acc = SymPoly.gen(d, a, (-1) ** (a - 1) * a)
        for i in range(1, a):
            acc = acc + SymPoly.gen(d, i, (-1) ** (i - 1)) * _power_sum_in_sigma(d, a - i)
        _P_CACHE[key] = acc
    return _P_CACHE[key]


def schur_in_sigma(lam, d: int) -> SymPoly:
    """s_lam(x_1..x_d) via the dual Jacobi-Trudi identity s_lam = det(e_{lam'_i - i + j})."""
    lam = [v for v in lam if v > 0]
    if len(lam) > d:
        return SymPoly(d)
    if not lam:
        return SymPoly.const(d, 1)
    conj = [sum(1 for v in lam if v > i) for i in range(lam[0])]
    n = len(conj)
    mat = [[SymPoly.gen(d, conj[i] - i + j) for j in range(n)] for i in range(n)]
    return _poly_det(mat, d)


def _poly_det(mat, d):
    n = len(mat)
    if n == 0:
        return SymPoly.const(d, 1)
    out = SymPoly(d)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = SymPoly.const(d, sign)
        for i, j in enumerate(perm):
            term = term * mat[i][j]
            if not term.terms:
                break
        out = out + term
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


# -- the gap polynomial ---------------------------------------------------------

def lower_cut_factor(y_cut, N: int) -> UniPoly:
    """(z - y_d + 1)_{N - (y_1 - y_d + 1)} as a polynomial."""
    y1, yd = y_cut[0], y_cut[-1]
    return UniPoly.from_roots(range(yd - 1, y1 - N, -1))


def eg_constant(y_cut, N: int):
    """C_{N,d} = prod_j 1/(N-j)! * Delta_d(y) / prod_j (d-j)!."""
    d = len(y_cut)
    c = Q(1)
    for j in range(1, d + 1):
        c /= fact(N - j) * fact(d - j)
    return c * vandermonde(list(y_cut))


def ycut_column(yb: int, N: int) -> UniPoly:
    """(z - y_beta + 1)_{N-1} / (N-1)!."""
    return UniPoly.from_roots(range(yb - 1, yb - N, -1), lead=Q(1, fact(N - 1)))


def ycut_det(us, y_cut, N: int):
    """det[(u_alpha - y_beta + 1)_{N-1}/(N-1)!]."""
    return det([[Q(rising(u - yb + 1, N - 1), fact(N - 1)) for yb in y_cut] for u in us])


def compute_Eg(y_cut, N: int) -> SymPoly:
    """The gap polynomial E_g(x_1..x_d) with
    det[(x_a - y_b + 1)_{N-1}/(N-1)!] = C_{N,d} Delta_d(x) E_g(x) prod_a P(x_a).

    Each column is divided exactly by P; the remaining d x d determinant is
    expanded by Cauchy-Binet into alternants, i.e. Schur polynomials, which
    are written in the sigma basis through the dual Jacobi-Trudi identity.
    """
    y_cut = tuple(y_cut)
    d = len(y_cut)
    if d == 0:
        return SymPoly.const(0, 1)
    if d > MAX_SYM_VARS:
        raise ValueError(f"d = {d} exceeds the symmetric-polynomial cap {MAX_SYM_VARS}")
    if list(y_cut) != sorted(set(y_cut), reverse=True):
        raise ValueError("y_cut must be strictly decreasing")
    if N - 1 + y_cut[-1] - y_cut[0] < 0:
        raise ValueError("need N - 1 >= y_1 - y_d")
    P = lower_cut_factor(y_cut, N)
    cols = [ycut_column(yb, N).divexact(P) for yb in y_cut]
    top = max(c.degree for c in cols)
    acc = SymPoly(d)
    for ks in combinations(range(top, -1, -1), d):
        minor = det([[col.coeff(k) for col in cols] for k in ks])
        if minor:
            lam = [ks[j] - (d - 1 - j) for j in range(d)]
            acc = acc + schur_in_sigma(lam, d) * minor
    return acc * (1 / eg_constant(y_cut, N))


def Eg_with_z(E: SymPoly, z, us):
    """E(z, u_1, ..., u_{d-1}) evaluated with z possibly a UniPoly."""
    return E.substitute(_elementary_with(z, us)[1:])


def _elementary_with(z, us):
    e = elementary(us)  # length d
    out = [Q(1)]
    for k in range(1, len(us) + 2):
        ek = e[k] if k < len(e) else 0
        out.append(ek + z * e[k - 1])
    return out


# -- complementary transform -----------------------------------------------------

class ComplementarySym:
    """S~ obtained from S by t_a -> [z^a +] t_a(L) - sum x'^a (power sums t_a).

    ``S`` lives in ``k`` variables (``k + 1`` counting z when ``with_z``);
    the result is a function of ``ell = |L| - k`` variables.
    """

    def __init__(self, S: SymPoly, L_points, ell: int, with_z: bool = False):
        k = S.nvars - (1 if with_z else 0)
        if len(L_points) != k + ell:
            raise ValueError(f"|L| = {len(L_points)} but k + ell = {k + ell}")
        self.F = S.to_power_sums()
        self.ell = ell
        self.with_z = with_z
        self.tL = [sum((Q(v) ** a for v in L_points), Q(0)) for a in range(1, S.nvars + 1)]

    def __call__(self, xprime, z=None):
        if len(xprime) != self.ell:
            raise ValueError(f"expected {self.ell} variables")
        vals = []
        for a, t in enumerate(self.tL, start=1):
            v = t - sum((Q(u) ** a for u in xprime), Q(0))
            if self.with_z:
                v = v + z ** a
            vals.append(v)
        return self.F.substitute(vals)

    def as_power_sums(self) -> PowerSumPoly:
        """S~ as a polynomial in the power sums of the ell variables (no z)."""
        if self.with_z:
            raise ValueError("z-dependent transform has no z-free power-sum form")
        n = self.F.nvars
        vals = [PowerSumPoly.const(n, t) - PowerSumPoly.gen(n, a) for a, t in enumerate(self.tL, start=1)]
        return self.F.substitute(vals)


def complementary_transform(S: SymPoly, L_points, ell: int, with_z: bool = False) -> ComplementarySym:
    return ComplementarySym(S, L_points, ell, with_z)


# -- q-hypergeometric function ------------------------------------------------------

def phi_q(w, n: int, N: int, q):
    """Phi_q(w) = sum_{k=1}^n w^{k-1} prod_{r=n+1}^N (1 - q^{r-k})."""
    q = Q(q)
    out = Q(0)
    wk = Q(1)
    for k in range(1, n + 1):
        c = Q(1)
        for r in range(n + 1, N + 1):
            c *= 1 - q ** (r - k)
        out += c * wk
        wk *= w
    return out


def phi_q_sum(z, n: int, N: int, y: int, q):
    """z * sum_{k=1}^n z^{-k} q^{(k-1)y} prod_{r=n+1}^N (1 - q^{r-k}); equals phi_q(q^y/z)."""
    q, z = Q(q), Q(z)
    out = Q(0)
    for k in range(1, n + 1):
        c = Q(1)
        for r in range(n + 1, N + 1):
            c *= 1 - q ** (r - k)
        out += z ** (1 - k) * q ** ((k - 1) * y) * c
    return out
