"""Command-line front end: ``cevian <command> [flags]``.

Every command writes one file (``--out``, default stdout) whose header or
``config`` field echoes the full configuration.  Randomized commands require
``--seed``.  Errors print a single ``error: <Kind>: <message>`` line to stderr;
usage errors exit 2, failures exit 1.
"""

import argparse
import json
import math
import sys

from . import __version__, _accel
from . import io as cio
from .density import approximate, verify
from .errors import BudgetExceeded, CevianError
from .geometry import CenterStrategy, subdivide
from .maps import self_similar_indices, solve_all_self_similar
from .simplex import format_triple, parse_triple
from .stats import (
    GENERATOR_NAME,
    MAX_CDF_GENERATION,
    MAX_GENERATION,
    cdf_bounds,
    default_thetas,
    flatness_stats,
    histogram,
    iter_generation,
    sample_walks,
)

EQUILATERAL = f"{math.pi / 3!r},{math.pi / 3!r},{math.pi / 3!r}"
# hand-typed triples like 1.0472,1.0472,1.0472 are rescaled onto the simplex
INPUT_RESCALE = 1e-3
OUT_HELP = "output file (default stdout)"
WORKERS_HELP = "worker threads >= 1; worker w draws from seed + w"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, *, strategy=True, start=True):
    if strategy:
        p.add_argument(
            "--strategy",
            default="incenter",
            help="centroid | incenter | gergonne | lemoine | weighted:p0,p1,p2 "
            "(weights positive, summing to 1)",
        )
    if start:
        p.add_argument(
            "--start",
            default=None,
            help="start triangle a,b,c (all angles > 0, sum pi); default equilateral",
        )
    p.add_argument("--degrees", action="store_true", help="read angle arguments in degrees")
    p.add_argument("--out", default="-", help=OUT_HELP)


def _n(p, help="generation / walk length n >= 0"):
    p.add_argument("--n", type=int, required=True, help=help)


def _seed(p):
    p.add_argument("--seed", type=int, required=True, help="RNG seed (required; PCG64)")


def build_parser():
    parser = _Parser(prog="cevian", description="Iterated Cevian subdivision of triangles.")
    parser.add_argument("--version", action="version", version=f"cevian {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("subdivide", help="angle triples of the six daughters")
    _common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")

    p = sub.add_parser("density", help="density certificate for start -> target")
    _common(p, strategy=False)
    p.add_argument("--target", required=True, help="target triangle a,b,c (may be degenerate)")
    p.add_argument("--epsilon", type=float, required=True, help="tolerance > 0")
    p.add_argument("--no-early-exit", action="store_true", help="always use the full-depth word")

    p = sub.add_parser("enumerate", help="all 6**n n-th generation daughters")
    _common(p)
    _n(p)
    p.add_argument(
        "--max-n", type=int, default=MAX_GENERATION, help="refuse n above this (6**n rows)"
    )

    p = sub.add_parser("sample", help="endpoints of m random n-step walks")
    _common(p)
    _n(p)
    p.add_argument("--m", type=int, required=True, help="number of walks >= 1")
    _seed(p)
    p.add_argument("--workers", type=int, default=1, help=WORKERS_HELP)

    p = sub.add_parser("hist", help="triangular-cell histogram of a generation")
    _common(p)
    _n(p)
    p.add_argument("--bins", type=int, required=True, help="cells per side >= 1")
    p.add_argument("--m", type=int, help="sample m walks instead of enumerating all 6**n")
    p.add_argument("--seed", type=int, help="RNG seed (required with --m)")
    p.add_argument("--workers", type=int, default=1, help=WORKERS_HELP)
    p.add_argument("--format", choices=("csv", "pgm"), default="csv", help="output format (default csv)")
    p.add_argument("--width", type=int, default=None, help="PGM width in pixels (default 4 * bins)")

    p = sub.add_parser("cdf", help="bounds on the limiting min-angle CDF from 6**n regions")
    p.add_argument("--n", type=int, required=True, help="generation, n <= --max-n")
    p.add_argument("--grid", type=int, default=512, help="number of theta points on [0, pi/3], >= 2")
    p.add_argument(
        "--max-n", type=int, default=MAX_CDF_GENERATION, help="refuse n above this (6**n regions)"
    )
    p.add_argument("--workers", type=int, default=1, help="threads over word prefixes")
    p.add_argument("--out", default="-", help=OUT_HELP)

    p = sub.add_parser("selfsim", help="triangles similar to one of their incenter daughters")
    p.add_argument("--out", default="-", help=OUT_HELP)

    p = sub.add_parser("flatness", help="fraction of walks with largest angle > pi - delta")
    _common(p)
    p.add_argument("--n", required=True, help="walk length(s), comma-separated, e.g. 5,10,20,40")
    p.add_argument("--m", type=int, required=True, help="walks per n, >= 1")
    p.add_argument("--delta", type=float, required=True, help="0 < delta < pi (radians)")
    _seed(p)
    p.add_argument("--workers", type=int, default=1, help=WORKERS_HELP)
    return parser


def _triple(text, degrees):
    return parse_triple(text, degrees=degrees, rescale=INPUT_RESCALE)


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k != "out" and v is not None}
    cfg["backend"] = _accel.backend_name()
    return cfg


def _meta(args, **extra):
    meta = {"command": args.command}
    if getattr(args, "strategy", None) is not None:
        meta["strategy"] = args.strategy
    if hasattr(args, "start"):
        meta["start"] = format_triple(args.start_triple)
    for k in ("n", "m", "seed", "bins", "delta", "epsilon"):
        if getattr(args, k, None) is not None:
            meta[k] = getattr(args, k)
    if getattr(args, "seed", None) is not None:
        meta["generator"] = GENERATOR_NAME
        meta["workers"] = args.workers
    meta["backend"] = _accel.backend_name()
    meta.update(extra)
    return meta


def _cmd_subdivide(args):
    strategy = CenterStrategy.parse(args.strategy)
    kids = subdivide(strategy, args.start_triple)
    if args.format == "json":
        return json.dumps({"config": _config(args), "daughters": [list(t) for t in kids]}) + "\n"
    return cio.triples_csv(kids, _meta(args))


def _cmd_density(args):
    cert = approximate(
        args.start_triple,
        _triple(args.target, args.degrees),
        args.epsilon,
        early_exit=not args.no_early_exit,
    )
    ok = verify(cert)
    text = cert.to_json({"verified": ok, "config": _config(args)}) + "\n"
    return text, 0 if ok else 1


def _cmd_enumerate(args):
    strategy = CenterStrategy.parse(args.strategy)
    if args.n > args.max_n:
        raise BudgetExceeded(f"6**{args.n} rows exceeds --max-n {args.max_n}")
    chunks = iter_generation(args.start_triple, strategy, args.n)
    header = cio.triples_csv([], _meta(args, strategy=str(strategy)))
    return header, chunks


def _cmd_sample(args):
    strategy = CenterStrategy.parse(args.strategy)
    pts = sample_walks(args.start_triple, strategy, args.n, args.m, args.seed, args.workers)
    return cio.triples_csv(pts, _meta(args, strategy=str(strategy)))


def _cmd_hist(args):
    strategy = CenterStrategy.parse(args.strategy)
    if args.bins < 1:
        raise UsageError("--bins must be >= 1")
    if args.m is not None:
        if args.seed is None:
            raise UsageError("--seed is required with --m")
        pts = sample_walks(args.start_triple, strategy, args.n, args.m, args.seed, args.workers)
        grid = histogram(pts, args.bins)
    else:
        if args.n > MAX_GENERATION:
            raise BudgetExceeded(f"6**{args.n} triangles; pass --m to sample instead")
        grid = None
        for chunk in iter_generation(args.start_triple, strategy, args.n):
            h = histogram(chunk, args.bins)
            grid = h if grid is None else grid + h
    meta = _meta(args, strategy=str(strategy), total=grid.total)
    if args.format == "pgm":
        return cio.pgm(grid, meta, width=args.width)
    return cio.histogram_csv(grid, meta)


def _cmd_cdf(args):
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    bounds = cdf_bounds(args.n, default_thetas(args.grid), workers=args.workers, max_n=args.max_n)
    return cio.cdf_csv(bounds, _meta(args, grid=args.grid))


def _cmd_selfsim(args):
    classes = []
    for i, perm, t in solve_all_self_similar():
        key = sorted(t)
        for c in classes:
            if max(abs(a - b) for a, b in zip(c["sorted"], key)) <= 1e-8:
                break
        else:
            c = {"sorted": key, "witnesses": []}
            classes.append(c)
        c["witnesses"].append({"map": i, "permutation": list(perm), "triple": list(t)})
    for c in classes:
        # indices depend on orientation; report them for the sorted triple
        c["self_similar_indices"] = sorted(self_similar_indices(c["sorted"], 1e-9))
        c["degrees"] = [math.degrees(x) for x in c["sorted"]]
    return json.dumps({"config": _config(args), "classes": classes}, indent=1) + "\n"


def _cmd_flatness(args):
    strategy = CenterStrategy.parse(args.strategy)
    ns = [int(x) for x in str(args.n).split(",")]
    lines = ["n,fraction"]
    for n in ns:
        frac = flatness_stats(
            args.start_triple, strategy, n, args.m, args.delta, args.seed, args.workers
        )
        lines.append(f"{n},{frac!r}")
    meta = _meta(args, strategy=str(strategy))
    return "\n".join(cio.header_lines(meta) + lines) + "\n"


COMMANDS = {
    "subdivide": _cmd_subdivide,
    "density": _cmd_density,
    "enumerate": _cmd_enumerate,
    "sample": _cmd_sample,
    "hist": _cmd_hist,
    "cdf": _cmd_cdf,
    "selfsim": _cmd_selfsim,
    "flatness": _cmd_flatness,
}


def _write(path, text, chunks=None):
    from .simplex import format_float

    out = sys.stdout if path == "-" else open(path, "w", newline="\n")
    try:
        out.write(text)
        for chunk in chunks or ():
            out.write("".join(",".join(format_float(x) for x in row) + "\n" for row in chunk))
    finally:
        if out is not sys.stdout:
            out.close()


def run(argv=None):
    """Parse ``argv`` and execute one command; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "start"):
            args.start_triple = _triple(args.start or EQUILATERAL, args.degrees)
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: UsageError: {exc}", file=sys.stderr)
        return 2
    except (CevianError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    status, chunks = 0, None
    if isinstance(result, tuple):
        if args.command == "enumerate":
            result, chunks = result
        else:
            result, status = result
    _write(args.out, result, chunks)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
