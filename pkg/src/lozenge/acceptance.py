"""The ten acceptance criteria as callable checks.

Every check returns a :class:`CriterionResult`; ``run_all`` runs them in
order.  The pytest suite and ``lozenge selftest`` both go through here, so
they report the same numbers.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from ._numbers import Q
from .enumeration import (Measure, correlation_table, enumerate_tilings, normalizer, weight,
                          two_cut_blue_profile)
from .geometry import build_polygon
from .identities import ALL_CHECKS
from .kernel_q import karlin_mcgregor_weight, q_kernel, q_to_1_probe, structure_report
from .kernel_red import FORMS, red_kernel
from .linalg import det
from .lkernel import verify_blue_kernel
from .presets import PRESETS
from .symfunc import count_by_jacobi_trudi, macmahon


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float | None = None
    data: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.passed and (self.budget is None or self.seconds < self.budget)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        budget = f" (budget {self.budget:g} s)" if self.budget else ""
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} [{self.seconds:.2f} s{budget}]"


def _poly(name):
    return build_polygon(PRESETS[name])


def _timed(number, name, budget, fn):
    t0 = time.perf_counter()
    passed, detail, data = fn()
    return CriterionResult(number, name, passed, detail, time.perf_counter() - t0, budget, data)


# 1 -------------------------------------------------------------------------------

def counting():
    def run():
        rows = []
        for name, (a, b, c) in (("hex111", (1, 1, 1)), ("hex222", (2, 2, 2)), ("hex333", (3, 3, 3))):
            P = _poly(name)
            n = sum(1 for _ in enumerate_tilings(P))
            rows.append((name, n, count_by_jacobi_trudi(P.x, P.y, P.N), macmahon(a, b, c)))
        for name in ("two-cut-small", "multicut-g1"):
            P = _poly(name)
            n = sum(1 for _ in enumerate_tilings(P))
            rows.append((name, n, count_by_jacobi_trudi(P.x, P.y, P.N), None))
        ok = all(n == jt and (mm is None or n == mm) for _, n, jt, mm in rows)
        ok = ok and rows[0][1] == 2 and rows[1][1] == 20
        detail = ", ".join(f"{nm}={n}" for nm, n, _, _ in rows)
        return ok, detail, {"rows": rows}
    return _timed(1, "enumeration = Jacobi-Trudi = MacMahon", 1.0, run)


# 2 -------------------------------------------------------------------------------

def _red_det_vs_enumeration(P, max_points, form="r3"):
    pts = P.lattice_points()
    K = red_kernel(P, form)
    table = correlation_table(P, Measure.uniform(), "red", max_points)
    kv = {(a, b): K(a[0], a[1], b[0], b[1]) for a in pts for b in pts}
    checked, worst = 0, Q(0)
    for k in range(1, max_points + 1):
        for s in combinations(sorted(pts), k):
            val = det([[kv[(a, b)] for b in s] for a in s])
            diff = abs(val - table.get(s, Q(0)))
            worst = max(worst, diff)
            checked += 1
    return checked, worst


def determinantal_uniform():
    def run():
        out = {}
        for name in ("hex222", "two-cut-small"):
            out[name] = _red_det_vs_enumeration(_poly(name), 3)
        ok = all(w == 0 for _, w in out.values())
        detail = ", ".join(f"{nm}: {c} sets, max diff {w}" for nm, (c, w) in out.items())
        return ok, detail, out
    return _timed(2, "det K_red = red correlations (1-3 points, uniform)", 300.0, run)


# 3 -------------------------------------------------------------------------------

def form_equivalence():
    def run():
        out = {}
        for name in ("hex222", "two-cut-small", "multicut-g1"):
            P = _poly(name)
            pts = P.lattice_points()
            ref = red_kernel(P, FORMS[0])
            ks = [red_kernel(P, f) for f in FORMS[1:]]
            mism = 0
            for a in pts:
                for b in pts:
                    v = ref(a[0], a[1], b[0], b[1])
                    mism += sum(1 for k in ks if k(a[0], a[1], b[0], b[1]) != v)
            out[name] = (len(pts) ** 2, mism)
        ok = all(m == 0 for _, m in out.values())
        detail = ", ".join(f"{nm}: {n} pairs x {len(FORMS)} forms, {m} mismatches" for nm, (n, m) in out.items())
        return ok, detail, out
    return _timed(3, "K_red forms d2/R/L/r3 agree", 300.0, run)


# 4 -------------------------------------------------------------------------------

def determinantal_q():
    def run():
        P = _poly("hex222")
        pts = P.lattice_points()
        out = {}
        for q in (Q(1, 2), Q(2, 3)):
            K = q_kernel(P, q)
            table = correlation_table(P, Measure.qmeasure(q), "red", 2)
            kv = {(a, b): K(a[0], a[1], b[0], b[1], "matrix") for a in pts for b in pts}
            worst, checked = Q(0), 0
            for k in (1, 2):
                for s in combinations(sorted(pts), k):
                    val = det([[kv[(a, b)] for b in s] for a in s])
                    worst = max(worst, abs(val - table.get(s, Q(0))))
                    checked += 1
            out[str(q)] = (checked, worst)
        ok = all(w == 0 for _, w in out.values())
        detail = ", ".join(f"q={q}: {c} sets, max diff {w}" for q, (c, w) in out.items())
        return ok, detail, out
    return _timed(4, "det K_q = q-weighted correlations (hex222)", None, run)


# 5 -------------------------------------------------------------------------------

def structure():
    def run():
        out = {}
        ok = True
        for name in ("hex222", "two-cut-small", "multicut-g1"):
            P = _poly(name)
            q = Q(1, 2)
            rep = structure_report(P, q)
            m = Measure.qmeasure(q)
            norm = normalizer(P, m)
            bad = sum(1 for t in enumerate_tilings(P) if karlin_mcgregor_weight(P, t, q) != weight(P, t, m, norm))
            out[name] = dict(rep, km_mismatches=bad)
            ok = ok and all(rep.values()) and bad == 0
        detail = "; ".join(f"{nm}: " + ", ".join(f"{k}={v}" for k, v in r.items()) for nm, r in out.items())
        return ok, detail, out
    return _timed(5, "H~ block shape, M~^-1 closed form, Karlin-McGregor weight", None, run)


# 6 -------------------------------------------------------------------------------

def identity_suite():
    def run():
        out = {name: fn() for name, fn in ALL_CHECKS.items()}
        ok = all(not bad for _, bad in out.values())
        detail = ", ".join(f"{nm} {c}/{c - len(b)}" for nm, (c, b) in out.items())
        return ok, detail, out
    return _timed(6, "identity suite", None, run)


# 7 -------------------------------------------------------------------------------

Q_TO_1_POLYGON = "two-cut-small"
Q_TO_1_SEED = 0
Q_TO_1_EPS = (Q(1, 8), Q(1, 16), Q(1, 32))


def local_pairs(P):
    """Point pairs with |m - n| <= 1 and |x - y| <= 1."""
    pts = P.lattice_points()
    return [(a, b) for a in pts for b in pts if abs(a[0] - b[0]) <= 1 and abs(a[1] - b[1]) <= 1]


def q_to_1_sample(P, k=10, seed=Q_TO_1_SEED):
    """Seeded draw of k local pairs whose conjugated q-kernel is not already exact."""
    probe = q_to_1_probe(P, local_pairs(P), Q_TO_1_EPS)
    nontrivial = [r["point"] for r in probe if any(e > 0 for e in r["errors"])]
    draw = random.Random(seed).sample(nontrivial, k)
    return [((a, b), (c, d)) for a, b, c, d in draw]


def q_to_one():
    def run():
        P = _poly(Q_TO_1_POLYGON)
        res = q_to_1_probe(P, q_to_1_sample(P), Q_TO_1_EPS)
        final = float(Q_TO_1_EPS[-1])
        ok = all(r["monotone"] and r["errors"][-1] < 10 * final for r in res)
        worst = max(r["errors"][-1] for r in res)
        nmono = sum(r["monotone"] for r in res)
        detail = f"{len(res)} pairs, {nmono} monotone, max final error {worst:.3e} < {10 * final:g}"
        return ok, detail, {"results": res}
    return _timed(7, "conjugated K_q -> K_red as q -> 1", None, run)


# 8 -------------------------------------------------------------------------------

def blue_kernel():
    def run():
        P = _poly("two-cut-small")
        rep = verify_blue_kernel(P, max_points=2)
        ok = rep["max_discrepancy"] == 0
        return ok, f"{rep['checked']} blue sets, max discrepancy {rep['max_discrepancy']}", rep
    return _timed(8, "det L_blue = blue correlations (1-2 points)", None, run)


# 9 -------------------------------------------------------------------------------

TAC_PARAMS = ((0, 0, 0.0), (1, 2, 0.0), (1, 2, 1.0))
TAC_TAUS = (-1, 0, 1, 2, 3)
TAC_THETAS = (-1.0, -0.5, 0.0, 0.5, 1.0)


def tacnode_checks():
    from .tacnode import L_dtac, QuadConfig, TacParams, involution_residual, support_violation

    def run():
        grid = [(t, th) for t in TAC_TAUS for th in TAC_THETAS]
        fine = QuadConfig(h=1 / 128, n_circle=128)
        out = {}
        for r, rho, beta in TAC_PARAMS:
            p = TacParams(r, rho, beta)
            inv = sup = halve = 0.0
            for t1, th1 in grid:
                for t2, th2 in grid:
                    inv = max(inv, involution_residual(t1, th1, t2, th2, p)["total"])
                    sup = max(sup, support_violation(t1, th1, t2, th2, p))
                    halve = max(halve, abs(L_dtac(t1, th1, t2, th2, p) - L_dtac(t1, th1, t2, th2, p, fine)))
            out[(r, rho, beta)] = (inv, sup, halve)
        ok = all(i < 1e-8 and s < 1e-10 and h < 1e-10 for i, s, h in out.values())
        detail = "; ".join(f"(r,rho,beta)={k}: inv {i:.1e}, support {s:.1e}, halving {h:.1e}"
                           for k, (i, s, h) in out.items())
        return ok, detail, out
    return _timed(9, "tacnode kernel involution / support / quadrature stability", 120.0, run)


# 10 ------------------------------------------------------------------------------

SAMPLER_CHAINS = 20000
SAMPLER_STEPS = 2000
FIG5_BUDGET = 600.0


def chi_square_sampler(P, m, chains=SAMPLER_CHAINS, steps=SAMPLER_STEPS, seed0=0):
    """Chi-square statistic and p-value of independent chain endpoints vs exact weights."""
    from scipy.stats import chi2

    from .sampler import sample

    tilings = list(enumerate_tilings(P))
    norm = normalizer(P, m)
    probs = [float(weight(P, t, m, norm)) for t in tilings]
    index = {t: i for i, t in enumerate(tilings)}
    counts = [0] * len(tilings)
    for s in range(chains):
        counts[index[sample(P, m, steps, seed0 + s)]] += 1
    # pool cells with small expectation so the chi-square approximation holds
    order = sorted(range(len(probs)), key=lambda i: probs[i])
    cells, cur_e, cur_o = [], 0.0, 0
    for i in order:
        cur_e += probs[i] * chains
        cur_o += counts[i]
        if cur_e >= 5:
            cells.append((cur_o, cur_e))
            cur_e, cur_o = 0.0, 0
    if cur_e:
        o, e = cells.pop()
        cells.append((o + cur_o, e + cur_e))
    stat = sum((o - e) ** 2 / e for o, e in cells)
    dof = len(cells) - 1
    return stat, dof, float(chi2.sf(stat, dof))


def sampler_checks(fig5: bool = True):
    from .render import render_svg
    from .sampler import ChainState, default_steps, sample, stats, step

    def run():
        P = _poly("hex222")
        chi = {}
        for label, m in (("uniform", Measure.uniform()), ("q=1/2", Measure.qmeasure(Q(1, 2)))):
            chi[label] = chi_square_sampler(P, m)
        ok = all(p > 0.01 for _, _, p in chi.values())
        strip = {}
        for name in ("two-cut-small", "fig4"):
            Pt = _poly(name)
            prof = two_cut_blue_profile(Pt)
            s = ChainState.initial(Pt, seed=11)
            samples = []
            for _ in range(200):
                step(s, Measure.uniform(), 500)
                samples.append(s.tiling())
            st = stats(Pt, samples)
            good = st["blue_profile_constant"] and st["rho_strip_equals_r"] and st["blue_per_eta"] == {
                e: v for e, v in prof.items() if v}
            strip[name] = good
            ok = ok and good
        detail = ", ".join(f"chi2 {k}: stat {s:.1f} dof {d} p={p:.3f}" for k, (s, d, p) in chi.items())
        detail += ", strip invariant " + ", ".join(f"{k}={v}" for k, v in strip.items())
        data = {"chi2": chi, "strip": strip}
        if fig5:
            P5 = _poly("fig5")
            t0 = time.perf_counter()
            t = sample(P5, Measure.uniform(), default_steps(P5), seed=2024)
            svg = render_svg(P5, t)
            secs = time.perf_counter() - t0
            st = stats(P5, [t])
            good = secs < FIG5_BUDGET and st["rho_strip_equals_r"] and svg.endswith("</svg>\n")
            ok = ok and good
            detail += f", fig5 sample+render {secs:.1f} s ({len(svg)} bytes SVG)"
            data["fig5_seconds"] = secs
        return ok, detail, data
    return _timed(10, "sampler chi-square, strip invariant, large run", FIG5_BUDGET, run)


CRITERIA = (counting, determinantal_uniform, form_equivalence, determinantal_q, structure,
            identity_suite, q_to_one, blue_kernel, tacnode_checks, sampler_checks)


def run_all(report=print):
    results = []
    for fn in CRITERIA:
        res = fn()
        if report:
            report(res.line())
        results.append(res)
    return results
