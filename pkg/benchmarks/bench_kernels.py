"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row runs the same inputs through both variants (after one warm-up call
that also triggers compilation) and reports the largest difference between
their outputs.  Long centroid walks drift apart by up to ~1e-7: the walks
flatten, and rounding is amplified on near-degenerate triangles.
"""

import argparse
import math
import time

import numpy as np

from cevian import _accel, kernels
from cevian.maps import word_matrix

EQ = np.full(3, math.pi / 3)


def _best(fn, args, repeat):
    fn(*args)
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(rng):
    tris = rng.dirichlet((1, 1, 1), size=200_000) * math.pi
    return [
        ("word_bounds n=6", "word_bounds", (np.ascontiguousarray(word_matrix(())), 6)),
        ("incenter_generation n=8", "incenter_generation", (EQ, 8)),
        ("incenter_walks 1e5 x 40", "incenter_walks", (EQ, rng.integers(0, 6, (100_000, 40)))),
        ("daughters centroid 2e5", "daughters", (tris, 0, np.zeros(3))),
        ("daughters gergonne 2e5", "daughters", (tris, 2, np.zeros(3))),
        ("geometric_walks centroid 1e5 x 40", "geometric_walks", (EQ, rng.integers(0, 6, (100_000, 40)), 0, np.zeros(3))),
        ("cell_index 1e6, 60 bins", "cell_index", (rng.dirichlet((1, 1, 1), size=1_000_000) * math.pi, 60)),
    ]


def _maxdiff(a, b):
    if isinstance(a, tuple):
        return max(_maxdiff(x, y) for x, y in zip(a, b))
    return float(np.abs(np.asarray(a, dtype=np.float64) - b).max())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':<36}{'numba s':>10}{'numpy s':>10}{'speedup':>9}{'max diff':>11}")
    for label, name, a in cases(rng):
        t_nb, out_nb = _best(getattr(kernels, name + "_nb"), a, args.repeat)
        t_np, out_np = _best(getattr(kernels, name + "_np"), a, args.repeat)
        print(f"{label:<36}{t_nb:>10.4f}{t_np:>10.4f}{t_np / t_nb:>8.1f}x{_maxdiff(out_nb, out_np):>11.1e}")


if __name__ == "__main__":
    main()
