"""The limiting red-dot kernel K^red, exact, in four equivalent forms.

Every form is a double contour integral whose outer variable v runs over the
poles p >= x of the integrand.  The v-dependence on (m, x) is only through
a_p(m, x) = (p - x + 1)_{N-m-1}/(N-m-1)!, so

    K(m, x; n, y) = K0 + sum_{p >= x} a_p(m, x) * beta_p(n, y).

For fixed p the inner z-integrand is F_p(z)/(z - y)_{N-n+1} with F_p a
polynomial (all cancellations against Q(z) are done on root lists), so the
z-integral over the big contour is the divided difference of F_p over the
nodes y, y-1, ..., y-N+n, and the Gamma_tau contour keeps a subset of them:

    beta_p(n, y) = sum_k (-1)^k binom(N-n, k) [Pi_p(y-k) + [y-k in Gamma_tau] Xi_p(y-k)]
                   (+ the w-integral term of form d2).

forms: 'd2' (determinant form), 'R' and 'L' (E_g forms over the right/left
sets), 'r3' (r-fold form over the left set).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

from ._numbers import Q, fact, rising, vandermonde
from .geometry import PolygonData
from .linalg import det
from .polynomial import prod_excluding
from .residue import ContourSpec, RationalFunction, gamma_tau_points, residue_sum
from .polynomial import UniPoly
from .symfunc import (ComplementarySym, SymPoly, compute_Eg, eg_constant, h_ones,
                      ycut_det, Eg_with_z)

FORMS = ("d2", "R", "L", "r3")


class PointOutsideError(ValueError):
    pass


class _Ctx:
    """Per-polygon cached data shared by all forms."""

    def __init__(self, P: PolygonData):
        self.P = P
        self.N, self.d = P.N, P.d
        self.ycut = P.y[: P.d]
        self.y1 = self.ycut[0] if P.d else None
        self.x = P.x
        self.dQ = {a: Q(prod_excluding(a, P.x, (a,))) for a in P.x}
        if P.d:
            self.E = compute_Eg(self.ycut, P.N)
            self.C = eg_constant(self.ycut, P.N)
        else:
            self.E = SymPoly.const(0, 1)
            self.C = Q(1)
        self.RC = tuple(sorted(P.R + P.C, reverse=True))
        self._Pcache = {}

    def Pz(self, z):
        v = self._Pcache.get(z)
        if v is None:
            v = Q(prod_excluding(z, self.P.P_roots))
            self._Pcache[z] = v
        return v

    def Eg(self, us):
        return self.E.evaluate(list(us)) if self.d else Q(1)

    def Eg_z(self, z, us):
        return Eg_with_z(self.E, z, list(us)) if self.d else Q(1)

    def check_point(self, m, x):
        if not (0 <= m <= self.N) or not (-self.d - m <= x <= self.P.M - 1):
            raise PointOutsideError(f"point (m={m}, x={x}) is outside the polygon")


@lru_cache(maxsize=64)
def _context(P: PolygonData) -> _Ctx:
    return _Ctx(P)


def K0(m, x, n, y):
    if n > m and y >= x:
        return -Q(rising(y - x + 1, n - m - 1), fact(n - m - 1))
    return Q(0)


def a_factor(N, m, x, p):
    """(p - x + 1)_{N-m-1}/(N-m-1)!; on the top line this degenerates to [p == x]."""
    if m == N:
        return Q(int(p == x))
    return Q(rising(p - x + 1, N - m - 1), fact(N - m - 1))


# -- Omega functions as explicit residue sums ---------------------------------------

def _res_weights_E(ctx, S, k):
    """Ordered-tuple-symmetric weights C prod P(u)/Q'(u) E_g(u) Delta(u)^2 over k-combos of S."""
    out = []
    for t in combinations(S, k):
        w = ctx.C
        for u in t:
            w *= ctx.Pz(u) / ctx.dQ[u]
        if w:
            w *= vandermonde(list(t)) ** 2 * ctx.Eg(t)
        out.append((t, w))
    return out


def omega_E(P, S, v, z):
    """Omega_R / Omega_L (set S): C prod_a oint_S P/Q (v-u)/(z-u) E_g Delta^2 (ordered tuples)."""
    ctx = _context(P)
    d = ctx.d
    if d == 0:
        return Q(1)
    total = Q(0)
    for t, w in _res_weights_E(ctx, S, d):
        if w:
            f = Q(1)
            for u in t:
                f *= Q(v - u) / (z - u) if (v, z) != (0, 0) else 1
            total += w * f
    return total * fact(d)


def omega_tilde_E(P, S, v, z):
    """Omega~_R / Omega~_L: C prod_{a>=2} oint_S P/Q (v-u)(z-u) E_g(z,u..) Delta_{d-1}^2."""
    ctx = _context(P)
    d = ctx.d
    if d == 0:
        return Q(0)
    total = Q(0)
    for t in combinations(S, d - 1):
        w = ctx.C
        for u in t:
            w *= ctx.Pz(u) / ctx.dQ[u] * (v - u) * (z - u)
        if w:
            total += w * vandermonde(list(t)) ** 2 * ctx.Eg_z(z, t)
    return total * fact(d - 1)


def omega_R(P, v, z):
    return omega_E(P, P.R, v, z)


def omega_L(P, v, z):
    return omega_E(P, P.L, v, z)


def omega_tilde_R(P, v, z):
    return omega_tilde_E(P, P.R, v, z)


def omega_tilde_L(P, v, z):
    return omega_tilde_E(P, P.L, v, z)


def omega_R_det(P, v, z):
    """Omega_R with the determinant Delta_d(u) Delta^ycut_d(u) in place of the E_g form."""
    ctx = _context(P)
    d = ctx.d
    if d == 0:
        return Q(1)
    total = Q(0)
    for t in combinations(P.R, d):
        w = Q(1)
        for u in t:
            w *= Q(v - u) / ((z - u) * ctx.dQ[u]) if (v, z) != (0, 0) else 1 / ctx.dQ[u]
        total += w * vandermonde(list(t)) * ycut_det(t, ctx.ycut, ctx.N)
    return total * fact(d)


class _LeftData:
    """h(u) residues and the complementary E~ transforms on the left set."""

    def __init__(self, ctx: _Ctx):
        P = ctx.P
        self.ctx = ctx
        self.resh = {}
        for u in P.L:
            qr = prod_excluding(u, P.R)
            pg = prod_excluding(u, P.G)
            ql = prod_excluding(u, P.L, (u,))
            self.resh[u] = Q(qr, pg * ql)
        r, d = P.r, P.d
        if d:
            self.Eplus = ComplementarySym(ctx.E, P.L, r, with_z=False)
            self.Eminus = ComplementarySym(ctx.E, P.L, r + 1, with_z=True)
        else:
            self.Eplus = self.Eminus = None

    def Et_plus(self, us):
        return self.Eplus(list(us)) if self.Eplus else Q(1)

    def Et_minus(self, z, us):
        return self.Eminus(list(us), z=z) if self.Eminus else Q(1)


@lru_cache(maxsize=64)
def _left(P: PolygonData) -> _LeftData:
    return _LeftData(_context(P))


def omega_plus(P, k, v, z):
    """Omega+_k(v,z) = prod oint_L h(u)(z-u)/(v-u) Delta_k^2 E~(u) (ordered k-tuples)."""
    if k == 0:
        return Q(1)
    lf = _left(P)
    total = Q(0)
    for t in combinations(P.L, k):
        w = vandermonde(list(t)) ** 2 * lf.Et_plus(t)
        for u in t:
            w *= lf.resh[u]
            if (v, z) != (0, 0):
                w *= Q(z - u) / (v - u)
        total += w
    return total * fact(k)


def omega_minus(P, k, v, z):
    """Omega-_k(v,z) = prod oint_L h(u)/((z-u)(v-u)) Delta_k^2 E~(z; u)."""
    if k == 0:
        return Q(1)
    lf = _left(P)
    total = Q(0)
    for t in combinations(P.L, k):
        w = vandermonde(list(t)) ** 2 * lf.Et_minus(z, t)
        for u in t:
            w *= lf.resh[u] / ((z - u) * (v - u))
        total += w
    return total * fact(k)


# -- the kernel -------------------------------------------------------------------------

class RedKernel:
    """Exact K^red(m, x; n, y) for one polygon and one form."""

    def __init__(self, P: PolygonData, form: str = "r3"):
        if form not in FORMS:
            raise ValueError(f"unknown form {form!r}; choose from {FORMS}")
        self.P = P
        self.form = form
        self.ctx = _context(P)
        self.N = P.N
        self._beta = {}
        self._pi = {}
        self._xi = {}
        getattr(self, "_setup_" + form)()

    # each setup defines self.poles and self._terms[p] = (pi_terms, xi_terms)
    # where a term list holds (coef, excluded_roots_product_data) evaluated lazily

    def _setup_d2(self):
        ctx, P, d = self.ctx, self.P, self.P.d
        combos = []
        for t in combinations(P.R, d):
            w = Q(1)
            for u in t:
                w /= ctx.dQ[u]
            w *= vandermonde(list(t)) * ycut_det(t, ctx.ycut, self.N) if d else 1
            combos.append((t, w))
        om00 = fact(d) * sum((w for _, w in combos), Q(0))
        if om00 == 0:
            raise ArithmeticError("Omega_R(0,0) vanishes")
        self.poles = tuple(P.x)
        self._pi_terms = {}
        for p in self.poles:
            terms = []
            for t, w in combos:
                if p in t or not w:
                    continue
                c = fact(d) * w / (ctx.dQ[p] * om00)
                for u in t:
                    c *= p - u
                terms.append((c, P.x, frozenset(t) | {p}))
            self._pi_terms[p] = terms
        self._xi_terms = {p: [] for p in self.poles}
        # w-integral term: d * sum_beta (-1)^{beta-1} h_{y-y_beta}(1^n) Phi_beta(p)
        self._phi = {}
        if d:
            for p in self.poles:
                phis = []
                for beta in range(d):
                    cols = [j for j in range(d) if j != beta]
                    acc = Q(0)
                    for t in combinations(P.R, d - 1):
                        w = Q(1)
                        for u in t:
                            w /= ctx.dQ[u]
                        minor = det([[Q(rising(u - ctx.ycut[j] + 1, self.N - 1), fact(self.N - 1))
                                      for j in cols] for u in t])
                        acc += w * vandermonde([p, *t]) * minor
                    phis.append(acc * fact(d - 1) * d / (ctx.dQ[p] * om00))
                self._phi[p] = phis

    def _setup_E(self, S, xi_sign):
        ctx, P, d = self.ctx, self.P, self.P.d
        weights = _res_weights_E(ctx, S, d)
        om00 = fact(d) * sum((w for _, w in weights), Q(0))
        if om00 == 0:
            raise ArithmeticError("Omega(0,0) vanishes")
        self.om00 = om00
        self.poles = tuple(P.x)
        self._pi_terms, self._xi_terms = {}, {}
        tilde_combos = []
        if d:
            for t in combinations(S, d - 1):
                w = ctx.C * fact(d - 1) * vandermonde(list(t)) ** 2
                for u in t:
                    w *= ctx.Pz(u) / ctx.dQ[u]
                if w:
                    tilde_combos.append((t, w))
        self._tilde = tilde_combos
        for p in self.poles:
            terms = []
            for t, w in weights:
                if p in t or not w:
                    continue
                c = fact(d) * w / (ctx.dQ[p] * om00)
                for u in t:
                    c *= p - u
                terms.append((c, P.x, frozenset(t) | {p}))
            self._pi_terms[p] = terms
        self._xi_sign = xi_sign
        self._xi_terms = {p: [] for p in self.poles}

    def _omega_tilde_poly_value(self, p, z):
        """d P(z) Omega~(p, z) / (Q'(p) Omega(0,0)) for the E_g forms."""
        ctx = self.ctx
        acc = Q(0)
        for t, w in self._tilde:
            f = w
            for u in t:
                f *= (p - u) * (z - u)
            if f:
                acc += f * ctx.Eg_z(z, t)
        return self.P.d * ctx.Pz(z) * acc / (ctx.dQ[p] * self.om00)

    def _setup_R(self):
        self._setup_E(self.P.R, -1)

    def _setup_L(self):
        self._setup_E(self.P.L, +1)

    def _setup_r3(self):
        ctx, P, r = self.ctx, self.P, self.P.r
        lf = _left(P)
        plus = []
        for t in combinations(P.L, r):
            w = vandermonde(list(t)) ** 2 * lf.Et_plus(t)
            for u in t:
                w *= lf.resh[u]
            plus.append((t, w * fact(r)))
        om00 = sum((w for _, w in plus), Q(0))
        if om00 == 0:
            raise ArithmeticError("Omega+_r(0,0) vanishes")
        minus = []
        for t in combinations(P.L, r + 1):
            w = vandermonde(list(t)) ** 2
            for u in t:
                w *= lf.resh[u]
            minus.append((t, w * fact(r + 1) / (r + 1)))
        self.poles = tuple(sorted(set(ctx.RC) | set(P.L), reverse=True))
        RC = ctx.RC
        dRC = {a: prod_excluding(a, RC, (a,)) for a in RC}
        self._pi_terms, self._xi_terms = {}, {}
        self._minus = minus
        self._om00 = om00

        def f_t(t, p):
            if p in dRC:
                out = Q(1) / dRC[p]
                for u in t:
                    out /= p - u
                return out
            if p not in t:
                return Q(0)
            out = Q(1) / prod_excluding(p, RC)
            for u in t:
                if u != p:
                    out /= p - u
            return out

        self._f_t = f_t
        roots_plus = tuple(RC) + tuple(P.L)
        for p in self.poles:
            terms = []
            for t, w in plus:
                c = f_t(t, p)
                if c and w:
                    # roots: RC and t, minus p; encode as all roots except (L \ t) and p
                    excl = frozenset(u for u in P.L if u not in t) | {p}
                    terms.append((c * w / om00, roots_plus, excl))
            self._pi_terms[p] = terms
            xt = []
            for t, w in minus:
                c = f_t(t, p)
                if c and w:
                    xt.append((t, c * w / om00))
            self._xi_terms[p] = xt

    # -- evaluation ---------------------------------------------------------------

    def Pi(self, p, z):
        key = (p, z)
        v = self._pi.get(key)
        if v is None:
            v = Q(0)
            for c, roots, excl in self._pi_terms[p]:
                v += c * prod_excluding(z, roots, excl)
            if self.form == "R" and self.P.d:
                v += self._omega_tilde_poly_value(p, z)
            self._pi[key] = v
        return v

    def Xi(self, p, z):
        key = (p, z)
        v = self._xi.get(key)
        if v is None:
            ctx, P = self.ctx, self.P
            if self.form in ("R", "L"):
                if P.d:
                    base = self._omega_tilde_poly_value(p, z)
                    # R: the big contour counted the Gamma_tau nodes, subtract them (-d);
                    # L: add +d on Gamma_tau.
                    v = -base if self.form == "R" else base
                else:
                    v = Q(0)
            elif self.form == "r3":
                v = Q(0)
                lf = _left(P)
                if self._xi_terms[p]:
                    pz = ctx.Pz(z)
                    for t, c in self._xi_terms[p]:
                        v += c * pz * prod_excluding(z, P.L, t) * lf.Et_minus(z, t)
            else:
                v = Q(0)
            self._xi[key] = v
        return v

    def beta(self, p, n, y):
        key = (p, n, y)
        v = self._beta.get(key)
        if v is not None:
            return v
        N = self.N
        tau = set(gamma_tau_points(y, n, self.ctx.y1, N))
        v = Q(0)
        for k in range(N - n + 1):
            z = y - k
            term = self.Pi(p, z)
            if z in tau:
                term += self.Xi(p, z)
            if term:
                v += (-1) ** k * comb(N - n, k) * term
        if self.form == "d2" and self.P.d:
            ycut = self.ctx.ycut
            for b, phi in enumerate(self._phi[p]):
                hv = h_ones(y - ycut[b], n)
                if hv:
                    v += (-1) ** b * hv * phi
        self._beta[key] = v
        return v

    def __call__(self, m, x, n, y):
        self.ctx.check_point(m, x)
        self.ctx.check_point(n, y)
        out = K0(m, x, n, y)
        N = self.N
        for p in self.poles:
            if p >= x:
                a = a_factor(N, m, x, p)
                if a:
                    out += a * self.beta(p, n, y)
        return out

    def matrix(self, pts):
        return [[self(m, x, n, y) for (n, y) in pts] for (m, x) in pts]


_KERNELS = {}


def red_kernel(P: PolygonData, form: str = "r3") -> RedKernel:
    key = (P, form)
    if key not in _KERNELS:
        _KERNELS[key] = RedKernel(P, form)
    return _KERNELS[key]


def K_red(P: PolygonData, m, x, n, y, form: str = "r3"):
    return red_kernel(P, form)(m, x, n, y)


def K_red_correlation(P: PolygonData, pts, form: str = "r3"):
    pts = [tuple(p) for p in pts]
    if not pts:
        return Q(1)
    return det(red_kernel(P, form).matrix(pts))


# -- literal reference (slow): explicit rational integrands through the residue engine ----

def K_red_reference(P: PolygonData, m, x, n, y, form: str = "L"):
    """Single entry computed from the nested-integral definitions without the
    divided-difference shortcut: for each v-pole the z-integrand is built as an
    explicit rational function (colliding poles merge) and summed by the engine,
    with the Res_infinity cross-check."""
    if form not in ("R", "L"):
        raise ValueError("reference path implements forms R and L")
    ctx = _context(P)
    N, d = P.N, P.d
    ctx.check_point(m, x)
    ctx.check_point(n, y)
    S = P.R if form == "R" else P.L
    om00 = omega_E(P, S, 0, 0)
    Qpoly = UniPoly.from_roots(P.x)
    Ppoly = UniPoly.from_roots(P.P_roots)
    B = [y - k for k in range(N - n + 1)]
    out = K0(m, x, n, y)
    tau = ContourSpec.gamma_tau(y, n, ctx.y1, N)
    for p in P.x:
        if p < x:
            continue
        a = a_factor(N, m, x, p)
        if not a:
            continue
        # Omega(p, z) as a rational function of z: sum_t w_t prod (p-u)/(z-u)
        inner = Q(0)
        for t, w in _res_weights_E(ctx, S, d):
            if not w:
                continue
            c = w * fact(d)
            for u in t:
                c *= p - u
            if not c:
                continue
            f = RationalFunction(Qpoly * c, _merge(B, (p, *t)))
            inner += residue_sum(f, ContourSpec.all_poles())
        if d:
            tilde = UniPoly()
            for t in combinations(S, d - 1):
                w = ctx.C * fact(d - 1) * vandermonde(list(t)) ** 2
                for u in t:
                    w *= ctx.Pz(u) / ctx.dQ[u] * (p - u)
                if not w:
                    continue
                lin = UniPoly([1])
                for u in t:
                    lin = lin * UniPoly([-u, 1])
                tilde = tilde + lin * _Eg_poly(ctx, t) * w
            ftilde = RationalFunction(Ppoly * tilde * d, B)
            if form == "R":
                inner += residue_sum(ftilde, ContourSpec.all_poles())
                inner -= residue_sum(ftilde, tau)
            else:
                inner += residue_sum(ftilde, tau)
        out += a * fact(N - n) * inner / (ctx.dQ[p] * om00)
    return out


def _merge(B, t):
    poles = {}
    for b in B:
        poles[b] = poles.get(b, 0) + 1
    for u in t:
        poles[u] = poles.get(u, 0) + 1
    return poles


def _Eg_poly(ctx, us):
    """E_g(z, u..) as a UniPoly in z (exact, via the sigma basis)."""
    if not ctx.d:
        return UniPoly([1])
    return Eg_with_z(ctx.E, UniPoly([0, 1]), list(us))
