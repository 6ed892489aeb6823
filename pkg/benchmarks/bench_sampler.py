"""Compare the compiled and pure-Python sampler step loops on one polygon.

    python3 benchmarks/bench_sampler.py [--steps N] [--polygon fig5|hex10]
"""
from __future__ import annotations

import argparse
import time

from lozenge import sampler as S
from lozenge.enumeration import Measure
from lozenge.geometry import PolygonSpec, build_polygon

POLYGONS = {
    "fig5": PolygonSpec.two_cut(20, 100, 100, 105, 95, 25, 30),
    "hex10": PolygonSpec.hexagon(10, 10, 10),
}


def run(P, backend, steps, q):
    s = S.ChainState.initial(P, seed=1)
    t0 = time.perf_counter()
    S.step(s, q, steps, backend)
    dt = time.perf_counter() - t0
    return dt, s


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--polygon", choices=sorted(POLYGONS), default="fig5")
    ap.add_argument("--q", default="1")
    a = ap.parse_args()
    P = build_polygon(POLYGONS[a.polygon])
    m = Measure.qmeasure(a.q)
    print(f"polygon={a.polygon} movable={S.movable_count(P)} steps={a.steps} q={a.q}")
    results = {}
    for backend in ("python", "cython"):
        if backend == "cython" and S._sampler_ext is None:
            print("cython: not built")
            continue
        dt, s = run(P, backend, a.steps, m)
        results[backend] = s
        print(f"{backend:7s} {dt:8.3f} s  {a.steps / dt:12.0f} steps/s  accepted={s.accepted}")
    if len(results) == 2:
        same = (results["python"].vals == results["cython"].vals).all()
        print(f"identical final state: {bool(same)}")


if __name__ == "__main__":
    main()
