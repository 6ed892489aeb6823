"""The q-deformed red-dot kernel K_q at a fixed rational 0 < q < 1.

Three routes, all exact:

* ``matrix``: the closed form in terms of psi~ = rows of H~^{-1} (H~ = H T)
  with the explicit inverse of M~;
* ``eynard_mehta``: the un-transformed kernel with M built from the
  convolution closed forms and inverted numerically (a check on the above);
* ``integral``: the (d+2)-fold contour integral written as finite residue
  sums over the right set.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ._numbers import Q, fact, vandermonde
from .enumeration import Tiling
from .geometry import PolygonData
from .linalg import det, diag, identity, inverse, is_identity, matmul, transpose
from .symfunc import calP, calP_tilde, h_geom, qpoch

ROUTES = ("matrix", "eynard_mehta", "integral")


class StructureError(ArithmeticError):
    """A structure identity failed to hold exactly."""


def _q(q):
    q = Q(q)
    if not 0 < q < 1:
        raise ValueError("q must satisfy 0 < q < 1")
    return q


def calP_coeffs(n: int, q):
    """Coefficients e_0..e_n of calP_n(z) = prod_{i=1}^n (1 - z q^i)/(1 - q^i)."""
    c = [Q(1)]
    for i in range(1, n + 1):
        qi = q ** i
        s = 1 / (1 - qi)
        nxt = [Q(0)] * (len(c) + 1)
        for k, v in enumerate(c):
            nxt[k] += v * s
            nxt[k + 1] -= v * qi * s
        c = nxt
    return c


def build_H(P: PolygonData, q):
    q = _q(q)
    d, N = P.d, P.N
    return [[h_geom(xi - yj, d, d + N - 1, q) for yj in P.y] for xi in P.x]


def build_T(P: PolygonData, q):
    """Block diag(1_d, T_N) with T_N = diag(q^{(N-j)d}) V^{-1} Pi D^{-1} diag(q^{-(d+N)(d+N-j)})."""
    q = _q(q)
    d, N = P.d, P.N
    e = calP_coeffs(N - 1, q)
    V = [[q ** (-(k * (N - 1 - j))) for j in range(N)] for k in range(N)]
    Pi = [[Q(int(i + j == N - 1)) for j in range(N)] for i in range(N)]
    Dinv = diag([1 / e[N - 1 - j] for j in range(N)])
    TN = matmul(matmul(matmul(diag([q ** ((N - 1 - j) * d) for j in range(N)]), inverse(V)),
                       matmul(Pi, Dinv)),
                diag([q ** (-(d + N) * (d + N - 1 - j)) for j in range(N)]))
    T = identity(d + N)
    for i in range(N):
        for j in range(N):
            T[d + i][d + j] = TN[i][j]
    return T


def build_Htilde_closed(P: PolygonData, q):
    """The block form [h_{x_i - y_j} | q^{x_i (d+N-j)}] predicted for H T."""
    q = _q(q)
    d, N = P.d, P.N
    return [[h_geom(xi - yj, d, d + N - 1, q) for yj in P.y[:d]]
            + [q ** (xi * (d + N - j)) for j in range(1, N + 1)] for xi in P.x]


def Mtilde_inverse(P: PolygonData, q):
    """Closed form: 1_d plus the antidiagonal (q;q)_{i-d-1} block."""
    q = _q(q)
    d, N = P.d, P.N
    out = [[Q(0)] * (d + N) for _ in range(d + N)]
    for i in range(d):
        out[i][i] = Q(1)
    for i in range(d + 1, d + N + 1):
        j = 2 * d + N - i + 1
        out[i - 1][j - 1] = qpoch(q, q, i - d - 1)
    return out


def build_M(P: PolygonData, q, Hinv=None):
    """M from the convolution closed forms, with psi the rows of H^{-1}."""
    q = _q(q)
    d, N = P.d, P.N
    if Hinv is None:
        Hinv = inverse(build_H(P, q))
    M = []
    for k in range(1, d + N + 1):
        if k <= d:
            row = [sum((Hinv[l][a] * h_geom(P.x[a] - P.y[k - 1], d, d + N - 1, q)
                        for a in range(d + N)), Q(0)) for l in range(d + N)]
        else:
            s = 1 / qpoch(q, q, d + N - k)
            row = [s * sum((Hinv[l][a] * q ** ((k - 1) * P.x[a]) for a in range(d + N)), Q(0))
                   for l in range(d + N)]
        M.append(row)
    return M


def structure_report(P: PolygonData, q) -> dict:
    """Exact checks of H T = H~ (with its zero block) and M T^{T,-1} M~^{-1} = 1."""
    q = _q(q)
    d, N = P.d, P.N
    H = build_H(P, q)
    T = build_T(P, q)
    HT = matmul(H, T)
    closed = build_Htilde_closed(P, q)
    nR = len(P.R)
    zero_block = all(HT[i][j] == 0 for i in range(nR, d + N) for j in range(d))
    M = build_M(P, q)
    Mt = matmul(M, inverse(transpose(T)))
    prod = matmul(Mt, Mtilde_inverse(P, q))
    return {
        "Htilde_equals_HT": HT == closed,
        "Htilde_zero_block": zero_block,
        "Mtilde_inverse_closed_form": is_identity(prod),
    }


def _conv_virt(q, l, d, n, y):
    """phi_l(virt, .) * phi^{l+1, d+1+n}(., y) = q^{(l-1)y}/(q;q)_{d+n-l}."""
    return q ** ((l - 1) * y) / qpoch(q, q, d + n - l)


class QKernel:
    """Exact K_q(m, x; n, y) for one polygon and one q."""

    def __init__(self, P: PolygonData, q):
        self.P = P
        self.q = q = _q(q)
        self.d, self.N = P.d, P.N
        self.H = build_H(P, q)
        self.Hinv = inverse(self.H)
        self.Ht = build_Htilde_closed(P, q)
        self.Htinv = inverse(self.Ht)
        self._psi = {}
        self._psit = {}
        self._Minv = None
        self._omega = None

    def _check(self, m, x):
        if not (0 <= m <= self.N) or not (-self.d - m <= x <= self.P.M - 1):
            raise ValueError(f"point (m={m}, x={x}) is outside the polygon")

    def _psi_vec(self, inv, cache, m, x):
        key = (m, x)
        v = cache.get(key)
        if v is None:
            d, N, q = self.d, self.N, self.q
            hs = [h_geom(xl - x, d + m, d + N - 1, q) for xl in self.P.x]
            v = [sum((row[l] * hs[l] for l in range(d + N) if hs[l]), Q(0)) for row in inv]
            cache[key] = v
        return v

    def psi_tilde(self, m, x):
        """[psi~_k^{(m+1)}(x)]_k."""
        return self._psi_vec(self.Htinv, self._psit, m, x)

    def _term_i(self, m, x, n, y):
        if n <= m:
            return Q(0)
        return -h_geom(y - x, self.d + m, self.d + n - 1, self.q)

    def matrix_route(self, m, x, n, y):
        d, N, q = self.d, self.N, self.q
        psi = self.psi_tilde(m, x)
        out = self._term_i(m, x, n, y)
        qy = q ** y
        acc = Q(0)
        qky = Q(1)
        for k in range(1, n + 1):
            c = Q(1)
            for i in range(n + 1, N + 1):
                c *= 1 - q ** (i - k)
            acc += psi[d + N - k] * qky * c
            qky *= qy
        out += q ** (d * y) * acc
        for k in range(d):
            out += psi[k] * h_geom(y - self.P.y[k], d, d + n - 1, q)
        return out

    def eynard_mehta_route(self, m, x, n, y):
        d, N, q = self.d, self.N, self.q
        if self._Minv is None:
            self._Minv = inverse(build_M(self.P, q, self.Hinv))
        Minv = self._Minv
        psi = self._psi_vec(self.Hinv, self._psi, m, x)
        right = [h_geom(y - self.P.y[l], d, d + n - 1, q) for l in range(d)]
        right += [_conv_virt(q, l, d, n, y) for l in range(d + 1, d + n + 1)]
        out = self._term_i(m, x, n, y)
        for k in range(d + N):
            if psi[k]:
                out += psi[k] * sum((Minv[k][l] * right[l] for l in range(len(right))), Q(0))
        return out

    # -- residue form of the integral representation ---------------------------------

    def _omega_data(self):
        if self._omega is None:
            P, q, d, N = self.P, self.q, self.d, self.N
            qx = {a: q ** a for a in P.x}
            dQ = {}
            for a in P.x:
                v = Q(1)
                for b in P.x:
                    if b != a:
                        v *= qx[a] - qx[b]
                dQ[a] = v
            ptil = {a: [calP_tilde(N - 1, yb, a, q, d) for yb in P.y[:d]] for a in P.R}
            tuples = []
            for t in combinations(P.R, d):
                w = vandermonde([qx[u] for u in t]) * det([ptil[u] for u in t]) * fact(d)
                for u in t:
                    w /= dQ[u]
                tuples.append((t, w))
            om00 = sum((w for _, w in tuples), Q(0))
            tilde = []
            for t in combinations(P.R, d - 1) if d else ():
                w = Q(fact(d - 1))
                for u in t:
                    w /= dQ[u]
                tilde.append((t, w))
            self._omega = (qx, dQ, ptil, tuples, om00, tilde)
        return self._omega

    def integral_route(self, m, x, n, y):
        """q^{-(d+m)(x-y)} [-K0 + K1 + K2] with every integral summed by residues."""
        P, q, d, N = self.P, self.q, self.d, self.N
        qx, dQ, ptil, tuples, om00, tilde = self._omega_data()
        if om00 == 0:
            raise StructureError("Omega_q(0,0) vanishes")
        k0 = Q(0)
        if n > m and y >= x:
            k0 = calP(n - m - 1, q ** (y - x), q)
        qy = q ** y
        cks = []
        for k in range(1, n + 1):
            c = Q(1)
            for r in range(n + 1, N + 1):
                c *= 1 - q ** (r - k)
            cks.append(c)
        hrow = [h_geom(y - yb, d, d + n - 1, q) for yb in P.y[:d]]
        k1 = Q(0)
        k2 = Q(0)
        for xj in P.x:
            if xj < x:
                continue
            if m == N:
                a = q ** (m * (xj - y)) * (1 if xj == x else 0)
            else:
                a = q ** (m * (xj - y)) * calP(N - m - 1, q ** (xj - x), q)
            if not a:
                continue
            a /= dQ[xj]
            inner = Q(0)
            for t, w in tuples:
                if xj in t or not w:
                    continue
                f = w
                for u in t:
                    f *= qx[xj] - qx[u]
                # sum_k c_k [z^{k-1}] prod_{r not in t, r != j} (z q^y - q^{x_r})
                coeffs = [Q(1)]
                for xr in P.x:
                    if xr == xj or xr in t:
                        continue
                    nxt = [Q(0)] * (len(coeffs) + 1)
                    for i, c in enumerate(coeffs):
                        nxt[i + 1] += c * qy
                        nxt[i] -= c * qx[xr]
                    coeffs = nxt
                s = sum((cks[k] * coeffs[k] for k in range(min(n, len(coeffs)))), Q(0))
                inner += f * s
            k1 += a * inner
            if d:
                om_t = Q(0)
                for t, w in tilde:
                    if xj in t:
                        continue
                    rows = [hrow] + [ptil[u] for u in t]
                    om_t += w * vandermonde([qx[xj]] + [qx[u] for u in t]) * det(rows)
                k2 += a * om_t
        total = -k0 + k1 / om00 + d * k2 / (q ** (y * d) * om00)
        return total * q ** (-(d + m) * (x - y))

    def __call__(self, m, x, n, y, route: str = "matrix"):
        self._check(m, x)
        self._check(n, y)
        if route == "matrix":
            return self.matrix_route(m, x, n, y)
        if route == "eynard_mehta":
            return self.eynard_mehta_route(m, x, n, y)
        if route == "integral":
            return self.integral_route(m, x, n, y)
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")

    def matrix(self, pts, route: str = "matrix"):
        return [[self(m, x, n, y, route) for (n, y) in pts] for (m, x) in pts]


@lru_cache(maxsize=32)
def q_kernel(P: PolygonData, q) -> QKernel:
    return QKernel(P, q)


def K_q(P: PolygonData, m, x, n, y, q, route: str = "matrix"):
    return q_kernel(P, Q(q))(m, x, n, y, route)


def K_q_correlation(P: PolygonData, pts, q, route: str = "matrix"):
    pts = [tuple(p) for p in pts]
    if not pts:
        return Q(1)
    return det(q_kernel(P, Q(q)).matrix(pts, route))


# -- Karlin-McGregor ---------------------------------------------------------------

def karlin_mcgregor_weight(P: PolygonData, t: Tiling, q, Hinv=None):
    """C_{N,d,q} det(chi) prod_m det(phi_{d+m}(x^{(m-1)}_i, x^{(m)}_j)) det(psi_i(x^{(N)}_j)).

    Row d+m of the m-th matrix is the virtual point: phi_k(virt, z) = q^{(k-1)z}.
    Arrays that do not interlace give 0 through the determinants themselves.
    """
    q = _q(q)
    d, N = P.d, P.N
    if Hinv is None:
        Hinv = inverse(build_H(P, q))
    levels = [tuple(lv) for lv in t]
    out = q ** (d * N * (d + N) + N * (N * N - 1) // 3)
    out *= det([[Q(int(levels[0][j] == P.y[i])) for j in range(d)] for i in range(d)]) if d else 1
    for m in range(1, N + 1):
        k = d + m
        prev, cur = levels[m - 1], levels[m]
        mat = []
        for i in range(k):
            if i < k - 1:
                xi = prev[i]
                mat.append([q ** ((k - 1) * (z - xi)) if xi <= z else Q(0) for z in cur])
            else:
                mat.append([q ** ((k - 1) * z) for z in cur])
        out *= det(mat)
        if not out:
            return Q(0)
    pos = {xv: a for a, xv in enumerate(P.x)}
    top = levels[N]
    mat = [[Hinv[i][pos[z]] if z in pos else Q(0) for z in top] for i in range(d + N)]
    return out * det(mat)


# -- q -> 1 ------------------------------------------------------------------------

def q_to_1_probe(P: PolygonData, pairs, eps_grid=(Q(1, 8), Q(1, 16), Q(1, 32)), form: str = "r3"):
    """|q^{(d+m)(x-y)} K_q - K_red| at q = 1 - eps for each point pair.

    Returns a list of dicts with the errors per eps and the empirical order
    log2(err(eps)/err(eps/2)) between consecutive grid points.
    """
    from math import log2

    from .kernel_red import K_red

    out = []
    for (m, x), (n, y) in pairs:
        ref = K_red(P, m, x, n, y, form)
        errs = []
        for eps in eps_grid:
            q = 1 - Q(eps)
            v = K_q(P, m, x, n, y, q) * q ** ((P.d + m) * (x - y))
            errs.append(float(abs(v - ref)))
        orders = [log2(a / b) if a > 0 and b > 0 else float("inf") for a, b in zip(errs, errs[1:])]
        out.append({"point": (m, x, n, y), "limit": ref, "errors": errs, "orders": orders,
                    "monotone": all(b < a for a, b in zip(errs, errs[1:])) or all(e == 0 for e in errs)})
    return out
