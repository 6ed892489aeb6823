"""Exact checks of the auxiliary identities behind the kernels.

Each ``check_*`` function returns ``(number_checked, failures)`` where
``failures`` lists the offending instances; an empty list means every case
held as a rational equality.
"""
from __future__ import annotations

import random

from ._numbers import Q, fact, rising, vandermonde
from .geometry import PolygonSpec, build_polygon
from .kernel_red import omega_L
from .linalg import det
from .polynomial import UniPoly
from .residue import ContourSpec, RationalFunction, gamma_tau_points, multi_residue_sum, residue_sum
from .symfunc import SymPoly, compute_Eg, eg_constant, elementary, h_ones, lower_cut_factor


# -- integral form of h_{y - y_j}(1^n) ----------------------------------------------

def h_integral(y: int, yj: int, n: int, N: int, y1: int):
    """(N-n)!/(N-1)! * sum of residues over gamma_y of (z-y_j+1)_{N-1}/(z-y)_{N-n+1}."""
    f = _h_integrand(y, yj, n, N)
    full = range(y + n - N, y + 1)
    tau = set(gamma_tau_points(y, n, y1, N))
    pts = [p for p in full if p not in tau]
    return Q(fact(N - n), fact(N - 1)) * residue_sum(f, ContourSpec.finite(pts))


def h_integral_split(y: int, yj: int, n: int, N: int, y1: int):
    """Same value as the full contour minus the Gamma_tau contour."""
    f = _h_integrand(y, yj, n, N)
    full = residue_sum(f, ContourSpec.finite(range(y + n - N, y + 1)))
    tau = residue_sum(f, ContourSpec.gamma_tau(y, n, y1, N))
    return Q(fact(N - n), fact(N - 1)) * (full - tau)


def _h_integrand(y, yj, n, N):
    num = UniPoly.from_roots(range(yj - 1, yj - N, -1))  # (z - yj + 1)_{N-1}
    return RationalFunction(num, range(y + n - N, y + 1))  # (z - y)_{N-n+1}


def check_h_integral(max_N: int = 8):
    """Every (N, n, y_1 - y_j, y) with N <= max_N, y_j = 0 and y in a window covering all nonzero cases."""
    count, bad = 0, []
    for N in range(1, max_N + 1):
        for n in range(0, N):
            for gap in range(0, N):
                y1, yj = gap, 0
                for y in range(yj - N - 1, y1 + N + 2):
                    want = h_ones(y - yj, n)
                    got = h_integral(y, yj, n, N, y1)
                    got2 = h_integral_split(y, yj, n, N, y1)
                    count += 1
                    if not (want == got == got2):
                        bad.append((N, n, y1, yj, y, want, got, got2))
    return count, bad


# -- Vandermonde ratio with a removed column ------------------------------------

def _vander_hat(ys, k):
    """Delta^{hat k}: powers n..0 with the column of power k removed."""
    n = len(ys)
    powers = [p for p in range(n, -1, -1) if p != k]
    return det([[Q(v) ** p for p in powers] for v in ys])


def check_vandermonde_ratio(instances: int = 100, seed: int = 0):
    rng = random.Random(seed)
    count, bad = 0, []
    for _ in range(instances):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        pts = rng.sample(range(-15, 16), m + n)
        xs, ys = pts[:m], pts[m:]
        k = rng.randint(0, n)
        lhs = _vander_hat(ys, n - k) / Q(vandermonde(xs + ys))
        qp = []
        for l, xl in enumerate(xs):
            v = Q(1)
            for i, xi in enumerate(xs):
                if i != l:
                    v *= xl - xi
            for yi in ys:
                v *= xl - yi
            qp.append(v)
        rhs = Q((-1) ** (m * (m - 1) // 2)) * vandermonde(xs) * elementary(ys)[k]
        for v in qp:
            rhs /= v
        count += 1
        if lhs != rhs:
            bad.append((xs, ys, k, lhs, rhs))
    return count, bad


# -- e_{r-1} with removed variables as a residue at infinity ---------------------------

def check_removed_elementary(instances: int = 100, seed: int = 1):
    """(-1)^{r-1} e_{r-1}(q without q_k, q_{i_1..i_d}) = oint_{Gamma_inf} Q_q(z)/(z^{N-r+1}(z-q_k) prod(z-q_i))."""
    rng = random.Random(seed)
    count, bad = 0, []
    while count < instances:
        d, N = rng.randint(0, 3), rng.randint(1, 5)
        qs = [Q(rng.randint(1, 40), rng.randint(1, 9)) for _ in range(d + N)]
        if len(set(qs)) < d + N or Q(0) in qs:
            continue
        removed = rng.sample(range(d + N), d + 1)
        k, rest = removed[0], removed[1:]
        r = rng.randint(1, N)
        keep = [q for i, q in enumerate(qs) if i not in removed]
        lhs = Q((-1) ** (r - 1)) * elementary(keep)[r - 1]
        poles = {Q(0): N - r + 1}
        for i in removed:
            poles[qs[i]] = poles.get(qs[i], 0) + 1
        f = RationalFunction(UniPoly.from_roots(qs), poles)
        rhs = residue_sum(f, ContourSpec.all_poles())
        count += 1
        if lhs != rhs:
            bad.append((qs, k, rest, r, lhs, rhs))
    return count, bad


# -- contour splitting with a symmetric weight ---------------------------------------

def _random_symmetric(rng, ell):
    """Random symmetric polynomial of ell variables as a callable on tuples."""
    coefs = [Q(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(ell + 2)]

    def S(us):
        e = elementary(list(us))
        val = coefs[0]
        for j in range(1, ell + 1):
            val += coefs[j] * e[j]
        val += coefs[ell + 1] * sum((Q(u) ** 2 for u in us), Q(0))
        return val

    return S


def contour_split_sides(R: RationalFunction, gamma, z, S, ell: int, k: int):
    """Both sides of the split identity for ell variables and split index k (1 <= k <= ell + 1)."""
    z = Q(z)
    outer = R * RationalFunction(UniPoly([1]), [z])           # R(u)/(u - z)
    inner = R * UniPoly([-z, 1])                               # R(u)(u - z)
    with_z = list(gamma) + [z]

    def joint(us):
        return Q(vandermonde(list(us))) ** 2 * S(us)

    lhs = multi_residue_sum(outer, [with_z] * ell, joint)
    first = Q(0)
    if k > 1:
        def joint_z(us):
            return Q(vandermonde(list(us))) ** 2 * S((z,) + tuple(us))
        first = (k - 1) * R(z) * multi_residue_sum(inner, [list(gamma)] * (ell - 1), joint_z)
    second = multi_residue_sum(outer, [list(gamma)] * (k - 1) + [with_z] * (ell - k + 1), joint)
    return lhs, first + second


def check_contour_split(instances: int = 20, max_ell: int = 3, seed: int = 2):
    rng = random.Random(seed)
    count, bad = 0, []
    for _ in range(instances):
        poles = rng.sample([Q(a, b) for a in range(-6, 7) for b in (1, 2, 3)], rng.randint(2, 4))
        poles = list(dict.fromkeys(poles))
        num = UniPoly([Q(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))] + [Q(1)])
        R = RationalFunction(num, poles, scale=rng.randint(1, 5))
        while True:
            z = Q(rng.randint(-20, 20), rng.randint(1, 7))
            if z not in R.poles and num(z) != 0:
                break
        for ell in range(1, max_ell + 1):
            S = _random_symmetric(rng, ell)
            for k in range(1, ell + 2):
                lhs, rhs = contour_split_sides(R, poles, z, S, ell, k)
                count += 1
                if lhs != rhs:
                    bad.append((poles, z, ell, k, lhs, rhs))
    return count, bad


# -- |L| = d corollary -----------------------------------------------------------------

COR_LD_POLYGONS = (
    PolygonSpec.two_cut(1, 2, 2, 2, 2, 1, 1),
    PolygonSpec.two_cut(1, 2, 3, 3, 2, 1, 2),
    PolygonSpec.two_cut(2, 3, 2, 3, 2, 2, 2),
)


def check_left_ratio(specs=COR_LD_POLYGONS, samples: int = 12, seed: int = 3):
    """Omega_L(v,z)/Omega_L(0,0) = Q_L(v)/Q_L(z) on polygons with |L| = d."""
    rng = random.Random(seed)
    count, bad = 0, []
    for spec in specs:
        P = build_polygon(spec)
        if len(P.L) != P.d or P.d == 0:
            raise ValueError(f"{spec} does not have |L| = d >= 1")
        base = omega_L(P, 0, 0)
        for _ in range(samples):
            v = Q(rng.randint(-30, 30), rng.randint(1, 5))
            z = Q(rng.randint(-30, 30), rng.randint(1, 5))
            if z in P.L:
                continue
            lhs = omega_L(P, v, z) / base
            qv = qz = Q(1)
            for l in P.L:
                qv *= v - l
                qz *= z - l
            count += 1
            if lhs != qv / qz:
                bad.append((spec, v, z, lhs, qv / qz))
    return count, bad


# -- gap-polynomial factorization and its two printed examples ------------------------

def sigma_poly(d: int, coeffs: dict) -> SymPoly:
    """sum_i c_i sigma_i with sigma_0 the constant."""
    out = SymPoly(d)
    for i, c in coeffs.items():
        out = out + SymPoly.gen(d, i, Q(c))
    return out


# The two one-gap examples, y listed increasingly; the printed polynomials come
# out with N = 8 (the value of N is not printed alongside them).
EG_EXAMPLE_N = 8
EG_EXAMPLES = (
    ((2, 4, 5, 6), {4: 1, 3: -1, 2: -1, 1: 11, 0: -49}),
    ((2, 3, 5, 6, 7), {5: 1, 4: Q(-4, 5), 3: Q(-4, 5), 2: 4, 1: 4, 0: Q(-604, 5)}),
)


def check_gap_examples(N: int = EG_EXAMPLE_N):
    count, bad = 0, []
    for ys, coeffs in EG_EXAMPLES:
        y_cut = tuple(sorted(ys, reverse=True))
        got = compute_Eg(y_cut, N)
        want = sigma_poly(len(ys), coeffs)
        count += 1
        if got != want:
            bad.append((ys, str(got), str(want)))
    return count, bad


def check_gap_factorization(instances: int = 30, seed: int = 4):
    """det[(u_a - y_b + 1)_{N-1}/(N-1)!] = C E_g(u) Delta(u) prod P(u_a) on random y_cut and u."""
    rng = random.Random(seed)
    count, bad = 0, []
    while count < instances:
        d = rng.randint(1, 4)
        N = rng.randint(d, 8)
        y_cut = tuple(sorted(rng.sample(range(0, N + d - 1), d), reverse=True))
        if y_cut[0] - y_cut[-1] > N - 1:
            continue
        E = compute_Eg(y_cut, N)
        Pz = lower_cut_factor(y_cut, N)
        C = eg_constant(y_cut, N)
        us = [Q(rng.randint(-12, 12), rng.randint(1, 3)) for _ in range(d)]
        lhs = det([[Q(rising(u - yb + 1, N - 1)) / fact(N - 1) for yb in y_cut] for u in us])
        rhs = C * E.evaluate(us) * vandermonde(us)
        for u in us:
            rhs *= Pz(u)
        count += 1
        if lhs != rhs:
            bad.append((y_cut, N, us))
    return count, bad


def check_first_row_contour(instances: int = 20, seed: int = 5):
    """First-row-integrated determinant equals the contour form with E_g(z, u_2..u_d)."""
    rng = random.Random(seed)
    count, bad = 0, []
    while count < instances:
        d = rng.randint(1, 3)
        N = rng.randint(d + 1, 7)
        y_cut = tuple(sorted(rng.sample(range(0, N + d - 1), d), reverse=True))
        if y_cut[0] - y_cut[-1] > N - 1:
            continue
        y1 = y_cut[0]
        n = rng.randint(0, N - 1)
        y = rng.randint(y_cut[-1] - 2, y1 + 3)
        us = [Q(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(d - 1)]
        rows = [[Q(h_ones(y - yb, n)) for yb in y_cut]]
        rows += [[Q(rising(u - yb + 1, N - 1)) / fact(N - 1) for yb in y_cut] for u in us]
        lhs = det(rows)
        E = compute_Eg(y_cut, N)
        Pz = lower_cut_factor(y_cut, N)
        C = eg_constant(y_cut, N)
        poles = range(y + n - N, y + 1)
        tau = set(gamma_tau_points(y, n, y1, N))
        total = Q(0)
        for p in poles:
            if p in tau:
                continue
            zs = [Q(p)] + us
            val = E.evaluate(zs) * vandermonde(zs) * Pz(p)
            for u in us:
                val *= Pz(u)
            res = Q(1)
            for q_ in poles:
                if q_ != p:
                    res *= p - q_
            total += val / res
        rhs = C * fact(N - n) * total
        count += 1
        if lhs != rhs:
            bad.append((y_cut, N, n, y, us, lhs, rhs))
    return count, bad


ALL_CHECKS = {
    "h_integral": check_h_integral,
    "vandermonde_ratio": check_vandermonde_ratio,
    "removed_elementary": check_removed_elementary,
    "contour_split": check_contour_split,
    "left_ratio": check_left_ratio,
    "gap_examples": check_gap_examples,
    "gap_factorization": check_gap_factorization,
    "first_row_contour": check_first_row_contour,
}


def run_all() -> dict:
    return {name: fn() for name, fn in ALL_CHECKS.items()}
