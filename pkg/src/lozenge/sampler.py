"""Seedable single-site Metropolis sampler for tilings under the uniform and q measures.

A move shifts one dot x_i^(k) (0 < k < N) by +-1 and is kept iff the array
stays interlacing.  The q-measure weight is q^(-volume), and one unit move
changes the volume by +-1, so a +1 move is always accepted and a -1 move is
accepted with probability q.  The proposal is symmetric, so detailed balance
holds for the target measure.

The step loop runs in a compiled extension when it is built and in plain
Python otherwise.  Both use the same xoshiro256** generator, so a seed fixes
the trajectory on either backend.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _rng
from . import _sampler_py
from .enumeration import Measure, Tiling, blue_counts_per_eta, is_interlacing
from .geometry import PolygonData

try:
    from . import _sampler_ext
    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    _sampler_ext = None
    BACKEND = "python"

THREADS_ENV = "LOZENGE_THREADS"


def default_threads() -> int:
    v = os.environ.get(THREADS_ENV)
    if v:
        try:
            return max(1, int(v))
        except ValueError:
            pass
    return 1


def minimal_tiling(P: PolygonData) -> Tiling:
    """Pointwise-minimal interlacing array: every x_i^(k) as small as feasible."""
    N, d, top = P.N, P.d, P.x
    levels = [tuple(P.y[:d])]
    for k in range(1, N):
        prev = levels[-1]
        s = N - k
        lev = []
        for i in range(d + k):
            v = top[i + s] + s
            if i < d + k - 1:
                v = max(v, prev[i])
            lev.append(v)
        levels.append(tuple(lev))
    levels.append(tuple(top))
    return tuple(levels)


def movable_count(P: PolygonData) -> int:
    return sum(P.d + k for k in range(1, P.N))


def default_steps(P: PolygonData) -> int:
    """Heuristic budget 20 * (movable dots)^2 single-site proposals; no mixing guarantee."""
    return 20 * movable_count(P) ** 2


def _q_float(m: Measure) -> float:
    return 1.0 if m.kind == "uniform" else float(m.q)


@dataclass
class ChainState:
    """Flat level array + generator state + step count."""

    P: PolygonData
    vals: np.ndarray
    rng: np.ndarray
    steps: int = 0
    accepted: int = 0
    offs: np.ndarray = field(repr=False, default=None)
    lev_of: np.ndarray = field(repr=False, default=None)
    pos_of: np.ndarray = field(repr=False, default=None)

    @classmethod
    def initial(cls, P: PolygonData, seed: int, tiling: Tiling | None = None) -> "ChainState":
        t = minimal_tiling(P) if tiling is None else tiling
        offs = np.zeros(P.N + 2, dtype=np.int64)
        for k in range(P.N + 1):
            offs[k + 1] = offs[k] + P.d + k
        vals = np.fromiter((v for lev in t for v in lev), dtype=np.int64, count=int(offs[-1]))
        lev_of = np.fromiter((k for k in range(1, P.N) for _ in range(P.d + k)), dtype=np.int64)
        pos_of = np.fromiter((i for k in range(1, P.N) for i in range(P.d + k)), dtype=np.int64)
        rng = np.array(_rng.seed_state(seed), dtype=np.uint64)
        return cls(P, vals, rng, 0, 0, offs, lev_of, pos_of)

    def tiling(self) -> Tiling:
        o = self.offs
        return tuple(tuple(int(v) for v in self.vals[o[k]:o[k + 1]]) for k in range(self.P.N + 1))

    def copy(self) -> "ChainState":
        return ChainState(self.P, self.vals.copy(), self.rng.copy(), self.steps, self.accepted,
                          self.offs, self.lev_of, self.pos_of)


def step(s: ChainState, m: Measure, n: int = 1, backend: str | None = None) -> ChainState:
    """Advance ``s`` by ``n`` proposals in place and return it."""
    if n < 0:
        raise ValueError("step count must be >= 0")
    backend = backend or BACKEND
    q = _q_float(m)
    if backend == "cython":
        if _sampler_ext is None:
            raise RuntimeError("compiled sampler is not built")
        acc = _sampler_ext.run_chain(s.vals, s.offs, s.lev_of, s.pos_of, s.P.d, n, q, s.rng)
    elif backend == "python":
        vals = s.vals.tolist()
        st = [int(w) for w in s.rng]
        acc = _sampler_py.run_chain(vals, s.offs.tolist(), s.lev_of.tolist(), s.pos_of.tolist(),
                                    s.P.d, n, q, st)
        s.vals[:] = vals
        s.rng[:] = np.array(st, dtype=np.uint64)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    s.steps += n
    s.accepted += int(acc)
    return s


def sample(P: PolygonData, m: Measure, steps: int | None = None, seed: int = 0,
           backend: str | None = None) -> Tiling:
    """Final tiling after ``steps`` proposals from the minimal tiling."""
    if steps is None:
        steps = default_steps(P)
    s = ChainState.initial(P, seed)
    return step(s, m, steps, backend).tiling()


def sample_many(P: PolygonData, m: Measure, steps: int | None, seeds, threads: int | None = None,
                backend: str | None = None) -> list:
    """One independent chain per seed; chains run on up to ``threads`` workers."""
    seeds = list(seeds)
    threads = threads or default_threads()
    if threads <= 1 or len(seeds) <= 1:
        return [sample(P, m, steps, sd, backend) for sd in seeds]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda sd: sample(P, m, steps, sd, backend), seeds))


def trajectory(P: PolygonData, m: Measure, steps: int, thin: int = 1, seed: int = 0,
               burn_in: int = 0, backend: str | None = None):
    """Yield the tiling every ``thin`` proposals (after ``burn_in``), ``steps`` times."""
    s = ChainState.initial(P, seed)
    if burn_in:
        step(s, m, burn_in, backend)
    for _ in range(steps):
        step(s, m, thin, backend)
        yield s.tiling()


def stats(P: PolygonData, samples) -> dict:
    """Per-line red counts, per-eta blue counts and whether the blue profile is constant."""
    red, blue = None, None
    constant = True
    n = 0
    for t in samples:
        if not is_interlacing(P, t):
            raise AssertionError("sample is not an interlacing array")
        r = tuple(len(lev) for lev in t)
        b = blue_counts_per_eta(P, t)
        if red is None:
            red, blue = r, b
        elif r != red or b != blue:
            constant = False
        n += 1
    out = {"samples": n, "red_per_line": red, "blue_per_eta": blue, "blue_profile_constant": constant}
    if P.two_cut is not None and blue is not None:
        tc = P.two_cut
        strip = range(tc.m1, tc.m1 + tc.rho + 1)
        out["rho_strip_counts"] = {e: blue.get(e, 0) for e in strip}
        out["rho_strip_equals_r"] = all(blue.get(e, 0) == P.r for e in strip)
    return out
