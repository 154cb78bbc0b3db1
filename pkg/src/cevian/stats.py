"""Generations, random walks, histograms over the simplex, min-angle CDF
bounds and flatness statistics."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExceeded, DegenerateTriangle
from .geometry import INCENTER, CenterStrategy
from .maps import MATRICES, word_matrix
from .simplex import make_triple

GENERATOR_NAME = "numpy.random.PCG64"
MAX_GENERATION = 9
MAX_CDF_GENERATION = 8
DEFAULT_THETA_POINTS = 512
_CHUNK_DEPTH = 6


def _check_start(start):
    start = make_triple(*start)
    if min(start) <= 0.0:
        raise DegenerateTriangle(f"start {tuple(start)} is degenerate")
    return np.asarray(start, dtype=np.float64)


def _subdivide_all(tris, strategy):
    if strategy.kind == "incenter":
        return np.einsum("dab,wb->wda", MATRICES, tris).reshape(-1, 3)
    out = kernels.daughters(tris, strategy.code, strategy.kernel_weights)
    return out.reshape(-1, 3)


def iter_generation(start, strategy: CenterStrategy = INCENTER, n: int = 1, chunk_depth=_CHUNK_DEPTH):
    """Yield the n-th generation in chunks of at most ``6**chunk_depth`` rows.

    Concatenating the chunks gives exactly ``enumerate_generation``'s output,
    in lineage order: the base-6 digits of a row index, most significant
    first, name the daughter taken at steps 1..n.
    """
    s = _check_start(start)
    if n < 0:
        raise ValueError("n must be nonnegative")
    head = max(0, n - chunk_depth)
    prefixes = _generation_array(s, strategy, head)
    return (_generation_array(row, strategy, n - head) for row in prefixes)


def _generation_array(s, strategy, n):
    if strategy.kind == "incenter":
        return kernels.incenter_generation(s, n)
    cur = np.asarray(s, dtype=np.float64)[None]
    for _ in range(n):
        cur = _subdivide_all(cur, strategy)
    return cur


def enumerate_generation(start, strategy: CenterStrategy = INCENTER, n: int = 1, max_n=MAX_GENERATION):
    """All ``6**n`` n-th generation daughters of ``start`` (with multiplicity).

    Raises BudgetExceeded above ``max_n``; use iter_generation to stream.
    """
    if n > max_n:
        raise BudgetExceeded(f"6**{n} triangles exceeds the budget (n <= {max_n}); stream instead")
    s = _check_start(start)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _generation_array(s, strategy, n)


def random_lineages(n, m, seed, workers=1):
    """Uniform daughter choices, shape (m, n).  Worker ``w`` draws its share of
    rows from a PCG64 stream seeded with ``seed + w``."""
    sizes = [m // workers + (1 if w < m % workers else 0) for w in range(workers)]
    parts = [
        np.random.default_rng(seed + w).integers(0, 6, size=(size, n), dtype=np.int64)
        for w, size in enumerate(sizes)
    ]
    return np.concatenate(parts, axis=0)


def walk(start, strategy: CenterStrategy, choices):
    s = _check_start(start)
    choices = np.asarray(choices, dtype=np.int64)
    if choices.shape[1] == 0:
        return np.tile(s, (choices.shape[0], 1))
    if strategy.kind == "incenter":
        return kernels.incenter_walks(s, choices)
    return kernels.geometric_walks(s, choices, strategy.code, strategy.kernel_weights)


def sample_walks(start, strategy: CenterStrategy = INCENTER, n=1, m=1, seed=0, workers=1):
    """Endpoints of ``m`` independent uniform random n-step subdivision walks."""
    if m < 1:
        raise ValueError("m must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    choices = random_lineages(n, m, seed, workers)
    if workers == 1:
        return walk(start, strategy, choices)
    bounds = np.linspace(0, m, workers + 1).astype(int)
    with ThreadPoolExecutor(workers) as pool:
        parts = pool.map(
            lambda k: walk(start, strategy, choices[bounds[k] : bounds[k + 1]]), range(workers)
        )
        return np.concatenate(list(parts), axis=0)


def flatness_stats(start, strategy: CenterStrategy, n, m, delta, seed, workers=1):
    """Fraction of sampled n-th generation daughters with largest angle > pi - delta."""
    if not 0.0 < delta < math.pi:
        raise ValueError("delta must lie in (0, pi)")
    pts = sample_walks(start, strategy, n, m, seed, workers)
    return float(np.mean(pts.max(axis=1) > math.pi - delta))


# ---------------------------------------------------------------------------
# histograms


def cell_count(bins):
    return bins * bins


def cell_layout(bins):
    """(row, col, orientation) for every linear cell index; orientation 0 = upright."""
    rows, cols, ori = [], [], []
    for i in range(bins):
        for k in range(2 * (bins - i) - 1):
            rows.append(i)
            cols.append(k // 2)
            ori.append(k % 2)
    return np.array(rows), np.array(cols), np.array(ori)


def cell_index_of(row, col, orientation, bins):
    return row * (2 * bins - row) + 2 * col + orientation


def cell_center(index, bins):
    """Barycentric center of a cell, as an angle triple (alpha, beta, gamma)."""
    rows, cols, ori = cell_layout(bins)
    i, j, o = rows[index], cols[index], ori[index]
    if o == 0:
        x, y = i + 1 / 3, j + 1 / 3
    else:
        x, y = i + 2 / 3, j + 2 / 3
    a, b = x * math.pi / bins, y * math.pi / bins
    return (a, b, math.pi - a - b)


@dataclass
class HistogramGrid:
    """Counts over the ``bins**2`` triangular cells tiling the simplex.

    Row ``i`` is the strip ``i <= bins*alpha/pi <= i+1``; inside it, column
    ``j`` indexes ``beta`` and orientation 0/1 is the upright/inverted cell.
    """

    bins: int
    counts: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other):
        if self.bins != other.bins:
            raise ValueError("bin counts differ")
        return HistogramGrid(self.bins, self.counts + other.counts, dict(self.meta))

    def rows(self):
        """(row, col, orientation, count) for every cell, in index order."""
        r, c, o = cell_layout(self.bins)
        return list(zip(r.tolist(), c.tolist(), o.tolist(), self.counts.tolist()))

    def modal_cell(self):
        return int(np.argmax(self.counts))

    def modal_point(self):
        return cell_center(self.modal_cell(), self.bins)

    def raster(self, width=None):
        """Square raster (height x width) of the embedded simplex for quick viewing.

        Pixels outside the simplex are 0.  Each inside pixel shows its cell count.
        """
        width = width or 4 * self.bins
        height = int(round(width * math.sqrt(3) / 2))
        img = np.zeros((height, width), dtype=np.int64)
        # embedding u = (alpha + 2 beta)/sqrt3 spans [0, 2pi/sqrt3]; v = alpha spans [0, pi]
        umax = 2 * math.pi / math.sqrt(3)
        ys, xs = np.mgrid[0:height, 0:width]
        v = (height - 1 - ys + 0.5) / height * math.pi
        u = (xs + 0.5) / width * umax
        alpha = v
        beta = (u * math.sqrt(3) - alpha) / 2
        gamma = math.pi - alpha - beta
        inside = (beta >= 0) & (gamma >= 0)
        pts = np.stack([alpha[inside], beta[inside], gamma[inside]], axis=1)
        img[inside] = self.counts[kernels.cell_index(pts, self.bins)]
        return img


def histogram(samples, bins, meta=None) -> HistogramGrid:
    if bins < 1:
        raise ValueError("bins must be >= 1")
    samples = np.asarray(samples, dtype=np.float64).reshape(-1, 3)
    idx = kernels.cell_index(samples, bins)
    counts = np.bincount(idx, minlength=cell_count(bins)).astype(np.int64)
    return HistogramGrid(bins, counts, dict(meta or {}))


# ---------------------------------------------------------------------------
# min-angle CDF bounds


@dataclass
class CdfBounds:
    generation: int
    thetas: np.ndarray
    lower: np.ndarray
    upper: np.ndarray


def default_thetas(points=DEFAULT_THETA_POINTS):
    return np.linspace(0.0, math.pi / 3, points)


def _count_words(prefix, depth, sorted_thetas):
    lo, hi = kernels.word_bounds(prefix, depth)
    upper = np.searchsorted(np.sort(lo), sorted_thetas, side="right")
    lower = np.searchsorted(np.sort(hi), sorted_thetas, side="right")
    return lower.astype(np.int64), upper.astype(np.int64)


def cdf_counts(n, thetas, workers=1, chunk_depth=_CHUNK_DEPTH):
    """Integer counts behind cdf_bounds: for each theta, the number of length-n
    words whose region has max min-angle <= theta (lower) and min min-angle
    <= theta (upper).  Words are processed in prefix chunks of
    ``6**chunk_depth``."""
    thetas = np.asarray(thetas, dtype=np.float64)
    head = max(0, n - chunk_depth)
    depth = n - head
    prefixes = [word_matrix(w) for w in _all_words(head)]

    def job(pm):
        return _count_words(pm, depth, thetas)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(job, prefixes))
    else:
        results = [job(pm) for pm in prefixes]
    lower = np.zeros(len(thetas), dtype=np.int64)
    upper = np.zeros(len(thetas), dtype=np.int64)
    for lo, up in results:
        lower += lo
        upper += up
    return lower, upper


def _all_words(k):
    if k == 0:
        return [()]
    return [(i,) + w for i in range(1, 7) for w in _all_words(k - 1)]


def cdf_bounds(n, thetas=None, workers=1, max_n=MAX_CDF_GENERATION) -> CdfBounds:
    """Bounds on the limiting CDF of the smallest angle from all 6**n regions.

    ``lower(theta)`` is the share of regions lying entirely at min-angle
    <= theta; ``upper(theta)`` the share touching min-angle <= theta.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise BudgetExceeded(
            f"6**{n} regions exceeds the budget (n <= {max_n}); raise max_n to stream"
        )
    thetas = default_thetas() if thetas is None else np.asarray(thetas, dtype=np.float64)
    if np.any(np.diff(thetas) < 0):
        raise ValueError("thetas must be ascending")
    lower, upper = cdf_counts(n, thetas, workers)
    total = 6.0**n
    return CdfBounds(n, thetas, lower / total, upper / total)
