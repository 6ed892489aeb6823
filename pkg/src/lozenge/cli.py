"""Command-line interface: ``lozenge <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 bad polygon spec or arguments.
Polygon specs are JSON files (``-`` reads stdin) or a ``--preset`` name.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from ._numbers import Q, frac_str, parse_rational
from .geometry import PolygonSpec, PolygonSpecError, build_polygon
from .presets import PRESETS

EXIT_OK, EXIT_FAIL, EXIT_SPEC = 0, 1, 2


class CliError(Exception):
    """Argument problem reported with exit code 2."""


# -- polygon input ---------------------------------------------------------------

def _load_polygon(args):
    if getattr(args, "preset", None):
        if args.spec:
            raise CliError("give either a spec file or --preset, not both")
        if args.preset not in PRESETS:
            raise CliError(f"unknown preset '{args.preset}' (known: {', '.join(PRESETS)})")
        return build_polygon(PRESETS[args.preset])
    if not args.spec:
        raise CliError("missing polygon spec (file path, '-' for stdin, or --preset)")
    if args.spec == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read spec: {exc.strerror}: {args.spec}") from None
    return build_polygon(PolygonSpec.from_json(text))


def _measure(args):
    from .enumeration import Measure

    if getattr(args, "q", None) in (None, "1"):
        return Measure.uniform()
    try:
        return Measure.qmeasure(parse_rational(args.q))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad --q value '{args.q}': {exc}") from None


def _threads(args) -> int:
    from .sampler import default_threads

    return args.threads if getattr(args, "threads", None) else default_threads()


def _writer(args):
    out = open(args.out, "w", newline="", encoding="utf-8") if getattr(args, "out", None) else sys.stdout
    return out, csv.writer(out, lineterminator="\n")


def _close(out):
    if out is not sys.stdout:
        out.close()


def _parse_points(text: str):
    """'n:x;n:x' -> [(n, x), ...]."""
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            a, b = chunk.split(":")
            pts.append((int(a), int(b)))
        except ValueError:
            raise CliError(f"bad point '{chunk}'; expected a:b") from None
    return pts


def _fmt_points(pts) -> str:
    return ";".join(f"{a}:{b}" for a, b in pts)


def _parse_floats(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise CliError(f"bad number list '{text}'") from None


def _parse_ints(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise CliError(f"bad integer list '{text}'") from None


# -- subcommands -----------------------------------------------------------------

def cmd_validate(args):
    P = _load_polygon(args)
    s = P.summary()
    print(f"N={P.N}")
    print(f"d={P.d}")
    print(f"M={P.M}")
    print(f"r={P.r}")
    print(f"g={P.g}")
    if P.two_cut is not None:
        print(f"rho={s['rho']}")
        print(f"sigma={s['sigma']}")
        if not P.two_cut.strips_separated:
            print("note: a strip touches the boundary (strict two-cut inequalities do not hold)")
    print(f"L={list(P.L)} C={list(P.C)} R={list(P.R)}")
    return EXIT_OK


def cmd_enumerate(args):
    from .enumeration import enumerate_tilings, normalizer, weight
    from .symfunc import count_by_jacobi_trudi

    P = _load_polygon(args)
    m = _measure(args)
    if args.count:
        n = sum(1 for _ in enumerate_tilings(P, cap=args.cap))
        jt = count_by_jacobi_trudi(P.x, P.y, P.N)
        print(f"tilings={n}")
        print(f"jacobi_trudi={jt}")
        return EXIT_OK if n == jt else EXIT_FAIL
    norm = normalizer(P, m)
    out, w = _writer(args)
    w.writerow(["tiling", "n", "dots", "probability"])
    for i, t in enumerate(enumerate_tilings(P, cap=args.cap)):
        p = frac_str(weight(P, t, m, norm))
        for n, lev in enumerate(t):
            w.writerow([i, n, " ".join(map(str, lev)), p])
    _close(out)
    return EXIT_OK


def cmd_correlate(args):
    from .enumeration import blue_correlation, correlation_table, red_correlation

    P = _load_polygon(args)
    m = _measure(args)
    out, w = _writer(args)
    w.writerow(["points", "probability"])
    if args.points:
        pts = _parse_points(args.points)
        fn = red_correlation if args.kind == "red" else blue_correlation
        w.writerow([_fmt_points(pts), frac_str(fn(P, m, pts))])
    else:
        table = correlation_table(P, m, args.kind, args.max_points)
        for key in sorted(table, key=lambda k: (len(k), k)):
            w.writerow([_fmt_points(key), frac_str(table[key])])
    _close(out)
    return EXIT_OK


def _kernel_pairs(P, args):
    pts = P.lattice_points()
    if args.points:
        sel = _parse_points(args.points)
        bad = [p for p in sel if p not in set(pts)]
        if bad:
            raise CliError(f"point {bad[0]} is outside the polygon")
        pts = sel
    return [(a, b) for a in pts for b in pts]


def cmd_kernel(args):
    from .kernel_red import red_kernel

    P = _load_polygon(args)
    K = red_kernel(P, args.form)
    out, w = _writer(args)
    w.writerow(["m", "x", "n", "y", "value_num", "value_den"])
    for (m, x), (n, y) in _kernel_pairs(P, args):
        v = Q(K(m, x, n, y))
        w.writerow([m, x, n, y, v.numerator, v.denominator])
    _close(out)
    return EXIT_OK


def cmd_qkernel(args):
    from .kernel_q import q_kernel

    P = _load_polygon(args)
    try:
        q = parse_rational(args.q)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad --q value '{args.q}'") from None
    if not 0 < q < 1:
        raise CliError("--q must lie strictly between 0 and 1")
    K = q_kernel(P, q)
    out, w = _writer(args)
    w.writerow(["m", "x", "n", "y", "value_num", "value_den"])
    for (m, x), (n, y) in _kernel_pairs(P, args):
        v = Q(K(m, x, n, y, args.route))
        w.writerow([m, x, n, y, v.numerator, v.denominator])
    _close(out)
    return EXIT_OK


def cmd_lkernel(args):
    from .lkernel import L_blue, blue_points, verify_blue_kernel

    P = _load_polygon(args)
    if args.verify_thm2:
        rep = verify_blue_kernel(P, max_points=args.max_points, form=args.form)
        print(f"checked={rep['checked']}")
        print(f"max_discrepancy={frac_str(rep['max_discrepancy'])}")
        return EXIT_OK if rep["max_discrepancy"] == 0 else EXIT_FAIL
    pts = sorted(blue_points(P))
    if args.points:
        pts = _parse_points(args.points)
    out, w = _writer(args)
    w.writerow(["eta", "xi", "eta2", "xi2", "value"])
    for a in pts:
        for b in pts:
            w.writerow([a[0], a[1], b[0], b[1], frac_str(L_blue(P, a, b, args.form))])
    _close(out)
    return EXIT_OK


def cmd_tacnode(args):
    from .lkernel import limit_trend
    from .tacnode import L_dtac, QuadConfig, QuadratureError, TacParams, involution_residual

    try:
        p = TacParams(args.r, args.rho, args.beta)
        qc = QuadConfig(a=args.a, eps=args.eps, T=args.T, h=args.h, n_circle=args.n_circle)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out, w = _writer(args)
    if args.limit_trend:
        ds = _parse_ints(args.limit_trend)
        pts = [(1, 0, 1, 0), (1, 0, 2, 1), (0, 1, 1, 0), (args.rho + 1, 0, args.rho + 1, 2)]
        w.writerow(["d", "tau1", "theta1", "tau2", "theta2", "scaled_L_blue", "L_dtac", "ratio"])
        if not args.trend_beta1 < 0:
            raise CliError("--trend-beta1 must be negative")
        for row in limit_trend(ds, args.r, args.rho, pts, beta1=args.trend_beta1, beta2=args.trend_beta2):
            w.writerow([row["d"], row["tau1"], f"{row['theta1']:.6g}", row["tau2"], f"{row['theta2']:.6g}",
                        f"{row['scaled']:.12g}", f"{row['limit']:.12g}", f"{row['ratio']:.6g}"])
        _close(out)
        return EXIT_OK
    taus = _parse_ints(args.taus)
    thetas = _parse_floats(args.thetas)
    grid = [(t, th) for t in taus for th in thetas]
    w.writerow(["tau1", "theta1", "tau2", "theta2", "value", "involution_residual"])
    worst = 0.0
    for t1, th1 in grid:
        for t2, th2 in grid:
            try:
                v = L_dtac(t1, th1, t2, th2, p, qc)
            except QuadratureError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_FAIL
            res = involution_residual(t1, th1, t2, th2, p, qc)["total"]
            worst = max(worst, res)
            w.writerow([t1, f"{th1:.6g}", t2, f"{th2:.6g}", f"{v:.15g}", f"{res:.3e}"])
    _close(out)
    print(f"max involution residual {worst:.3e}", file=sys.stderr)
    return EXIT_OK if worst < args.tol else EXIT_FAIL


def _dump_tiling(P, t, path, fmt):
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "dots"])
            for n, lev in enumerate(t):
                w.writerow([n, " ".join(map(str, lev))])
    else:
        import numpy as np

        flat = np.array([v for lev in t for v in lev], dtype=np.int64)
        np.savez(path, dots=flat, spec=json.dumps(P.spec.to_dict()))


def load_tiling(P, path):
    """Read a tiling written by ``sample`` (CSV or .npz) and check it against P."""
    from .enumeration import is_interlacing

    if path.endswith(".npz"):
        import numpy as np

        with np.load(path) as z:
            flat = [int(v) for v in z["dots"]]
        t, pos = [], 0
        for k in range(P.N + 1):
            t.append(tuple(flat[pos:pos + P.d + k]))
            pos += P.d + k
        t = tuple(t)
    else:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        t = tuple(tuple(int(v) for v in r[1].split()) for r in rows[1:])
    if not is_interlacing(P, t):
        raise CliError(f"{path} does not hold a valid tiling of this polygon")
    return t


def cmd_sample(args):
    from .sampler import default_steps, sample_many, stats

    P = _load_polygon(args)
    m = _measure(args)
    steps = default_steps(P) if args.steps is None else args.steps
    if steps < 0:
        raise CliError("--steps must be >= 0")
    seeds = [args.seed + i for i in range(args.chains)]
    tilings = sample_many(P, m, steps, seeds, threads=_threads(args))
    st = stats(P, tilings)
    print(f"steps={steps} chains={args.chains} seed={args.seed}", file=sys.stderr)
    if P.two_cut is not None:
        print(f"rho_strip_equals_r={st['rho_strip_equals_r']}", file=sys.stderr)
    if args.out:
        base, ext = os.path.splitext(args.out)
        for i, t in enumerate(tilings):
            path = args.out if len(tilings) == 1 else f"{base}-{i}{ext}"
            _dump_tiling(P, t, path, args.format)
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["chain", "n", "dots"])
        for i, t in enumerate(tilings):
            for n, lev in enumerate(t):
                w.writerow([i, n, " ".join(map(str, lev))])
    return EXIT_OK


def cmd_render(args):
    from .render import RenderStyle, render_svg
    from .sampler import minimal_tiling, sample

    P = _load_polygon(args)
    if args.tiling:
        t = load_tiling(P, args.tiling)
    elif args.seed is not None:
        t = sample(P, _measure(args), args.steps, args.seed)
    else:
        t = minimal_tiling(P)
    style = RenderStyle(scale=args.scale, red_dots=not args.no_red_dots, blue_dots=not args.no_blue_dots,
                        strips=args.strips)
    svg = render_svg(P, t, style)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all(report=lambda line: print(line, flush=True))
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_FAIL


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lozenge", description="Lozenge tilings of cut hexagons.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_spec(p):
        p.add_argument("spec", nargs="?", help="polygon JSON file, or - for stdin")
        p.add_argument("--preset", help=f"named polygon ({', '.join(PRESETS)})")
        return p

    def with_out(p):
        p.add_argument("--out", "-o", help="output file (default stdout)")
        return p

    def with_threads(p):
        p.add_argument("--threads", type=int, help="worker cap (default $LOZENGE_THREADS or 1)")
        return p

    p = with_spec(sub.add_parser("validate", help="check a spec and print derived data"))
    p.set_defaults(func=cmd_validate)

    p = with_out(with_spec(sub.add_parser("enumerate", help="list every tiling with its probability")))
    p.add_argument("--q", help="q-measure parameter in (0, 1] (default uniform)")
    p.add_argument("--count", action="store_true", help="only count and compare with Jacobi-Trudi")
    p.add_argument("--cap", type=int, default=2_000_000)
    p.set_defaults(func=cmd_enumerate)

    p = with_out(with_spec(sub.add_parser("correlate", help="exact correlations from the enumeration")))
    p.add_argument("--kind", choices=("red", "blue"), default="red")
    p.add_argument("--q")
    p.add_argument("--points", help="a:b;a:b (red: n:x, blue: eta:xi); default all sets")
    p.add_argument("--max-points", type=int, default=1)
    p.set_defaults(func=cmd_correlate)

    p = with_out(with_spec(sub.add_parser("kernel", help="exact red-dot kernel table")))
    p.add_argument("--form", choices=("d2", "R", "L", "r3"), default="r3")
    p.add_argument("--points", help="restrict to these lattice points n:x;n:x")
    p.set_defaults(func=cmd_kernel)

    p = with_out(with_spec(sub.add_parser("qkernel", help="exact q-kernel table")))
    p.add_argument("--q", required=True)
    p.add_argument("--route", choices=("matrix", "eynard_mehta", "integral"), default="matrix")
    p.add_argument("--points")
    p.set_defaults(func=cmd_qkernel)

    p = with_out(with_spec(sub.add_parser("lkernel", help="exact blue-dot kernel table")))
    p.add_argument("--form", choices=("d2", "R", "L", "r3"), default="r3")
    p.add_argument("--points", help="blue points eta:xi;eta:xi")
    p.add_argument("--verify-thm2", action="store_true",
                   help="compare det L with blue enumeration correlations; exit 1 on any discrepancy")
    p.add_argument("--max-points", type=int, default=2)
    p.set_defaults(func=cmd_lkernel)

    p = with_out(sub.add_parser("tacnode", help="numerical limit kernel on a (tau, theta) grid"))
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--taus", default="-1,0,1,2,3")
    p.add_argument("--thetas", default="-1,-0.5,0,0.5,1")
    p.add_argument("--a", type=float, default=0.5, help="abscissa of the vertical contour")
    p.add_argument("--eps", type=float, default=0.25, help="radius of the small circle")
    p.add_argument("--T", type=float, default=8.0, help="half-length of the vertical contour")
    p.add_argument("--h", type=float, default=1 / 64, help="trapezoid step")
    p.add_argument("--n-circle", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8, help="involution residual tolerance")
    p.add_argument("--limit-trend", metavar="D1,D2,...",
                   help="study: scaled blue kernel at these cut sizes vs the limit (not a check)")
    p.add_argument("--trend-beta1", type=float, default=-0.5, help="geometry shift of m1 (< 0); beta = -beta1 - beta2")
    p.add_argument("--trend-beta2", type=float, default=0.0)
    p.set_defaults(func=cmd_tacnode)

    p = with_threads(with_spec(sub.add_parser("sample", help="MCMC sample of a tiling")))
    p.add_argument("--steps", type=int, help="proposals per chain (default 20 * movable^2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q")
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--out", "-o", help="tiling file (CSV or .npz); default CSV on stdout")
    p.add_argument("--format", choices=("csv", "npz"), default="csv")
    p.set_defaults(func=cmd_sample)

    p = with_out(with_spec(sub.add_parser("render", help="SVG picture of a tiling")))
    p.add_argument("--tiling", help="tiling file from `sample` (default: minimal tiling)")
    p.add_argument("--seed", type=int, help="sample a tiling with this seed instead")
    p.add_argument("--steps", type=int)
    p.add_argument("--q")
    p.add_argument("--scale", type=int, default=12)
    p.add_argument("--no-red-dots", action="store_true")
    p.add_argument("--no-blue-dots", action="store_true")
    p.add_argument("--strips", action="store_true", help="dashed guides for the two strips")
    p.set_defaults(func=cmd_render)

    p = with_threads(sub.add_parser("selftest", help="run the acceptance suite"))
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except PolygonSpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
