"""The six linear maps of incenter subdivision.

Bisecting the angles of a triangle (alpha, beta, gamma) at the incenter yields
six daughters whose angles are linear in the parent's, so each daughter is
``M_i @ t`` for a fixed 3x3 matrix ``M_i``.  Every column of every ``M_i`` sums
to one, hence the maps send the angle simplex into itself.

Words are sequences of map indices 1..6.  ``[i1, i2, ..., ik]`` stands for the
product ``M_i1 @ M_i2 @ ... @ M_ik``; the rightmost map acts first.
"""

import itertools
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRegion
from .simplex import (
    TOL_SUM,
    AngleTriple,
    distance,
    format_float,
    make_triple,
    similar,
)

_H = 0.5

#: MATRICES[i - 1] is M_i
MATRICES = np.array(
    [
        [[_H, 0, 0], [_H, _H, 0], [0, _H, 1]],
        [[_H, _H, 0], [0, _H, 0], [_H, 0, 1]],
        [[1, 0, _H], [0, _H, 0], [0, _H, _H]],
        [[1, _H, 0], [0, _H, _H], [0, 0, _H]],
        [[_H, 0, _H], [_H, 1, 0], [0, 0, _H]],
        [[_H, 0, 0], [0, 1, _H], [_H, 0, _H]],
    ],
    dtype=np.float64,
)
MATRICES.setflags(write=False)

CONTRACTION = math.sqrt(3.0) / 2.0

PERMUTATIONS = tuple(itertools.permutations(range(3)))


def _exact_inverse(m):
    # adjugate / determinant; entries of m are in {0, 1/2, 1} and det = 1/4, so
    # every inverse entry is a small integer and exactly representable
    adj = np.empty((3, 3))
    for r in range(3):
        for c in range(3):
            minor = np.delete(np.delete(m, c, axis=0), r, axis=1)
            adj[r, c] = (-1) ** (r + c) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    det = m[0] @ adj[:, 0]
    return adj / det


INVERSES = np.array([_exact_inverse(m) for m in MATRICES])
INVERSES.setflags(write=False)


def _check_index(i):
    if not (isinstance(i, (int, np.integer)) and 1 <= i <= 6):
        raise ValueError(f"map index must be an integer in 1..6, got {i!r}")
    return int(i)


def parse_word(word):
    """Accept ``"123"``, ``[1, 2, 3]`` or ``(1, 2, 3)``; return a tuple of ints."""
    if isinstance(word, str):
        word = [int(ch) for ch in word.strip()]
    return tuple(_check_index(i) for i in word)


def format_word(word):
    return "".join(str(i) for i in parse_word(word))


def word_matrix(word):
    """The product matrix of a word (identity for the empty word)."""
    out = np.eye(3)
    for i in parse_word(word):
        out = out @ MATRICES[i - 1]
    return out


def apply(i, t) -> AngleTriple:
    """Return the daughter ``M_i @ t``."""
    m = MATRICES[_check_index(i) - 1]
    return AngleTriple(*(float(x) for x in m @ np.asarray(t, dtype=np.float64)))


def apply_word(word, t) -> AngleTriple:
    v = np.asarray(t, dtype=np.float64)
    for i in reversed(parse_word(word)):
        v = MATRICES[i - 1] @ v
    return AngleTriple(*(float(x) for x in v))


def _ordering(t):
    # stable: equal angles keep alpha < beta < gamma order
    return tuple(sorted(range(3), key=lambda k: t[k]))


def _build_preimage_table():
    """Map each strict ordering of the angles to the one map whose inverse
    sends that whole ordering cell back into the simplex.

    The cell where t[p0] <= t[p1] <= t[p2] is the triangle spanned by the
    images of (0,0,pi), (0,pi/2,pi/2) and (pi/3,pi/3,pi/3); the inverses are
    linear, so checking those three points settles the whole cell.
    """
    pi = math.pi
    table = {}
    for perm in PERMUTATIONS:
        verts = []
        for sorted_vals in ((0.0, 0.0, pi), (0.0, pi / 2, pi / 2), (pi / 3, pi / 3, pi / 3)):
            v = np.zeros(3)
            v[list(perm)] = sorted_vals
            verts.append(v)
        hits = [
            i
            for i in range(1, 7)
            if all((INVERSES[i - 1] @ v >= -1e-12).all() for v in verts)
        ]
        if len(hits) != 1:
            raise RuntimeError(f"preimage table: ordering {perm} matched maps {hits}")
        table[perm] = hits[0]
    return table


PREIMAGE_TABLE = _build_preimage_table()


def preimage_step(t):
    """Return ``(i, s)`` with ``s`` in the simplex and ``apply(i, s) == t``.

    For alpha <= beta <= gamma this is ``(1, (2a, 2b - 2a, a - b + c))``.
    """
    i = PREIMAGE_TABLE[_ordering(t)]
    s = INVERSES[i - 1] @ np.asarray(t, dtype=np.float64)
    # points on the cell boundary can come back as -1e-16
    s = np.where((s < 0.0) & (s >= -TOL_SUM), 0.0, s)
    return i, make_triple(*s)


def preimage_chain(t, k):
    """Iterate preimage_step ``k`` times; return the word and the k-th preimage."""
    word = []
    cur = make_triple(*t)
    for _ in range(k):
        i, cur = preimage_step(cur)
        word.append(i)
    return tuple(word), cur


def preimage_word(t, k):
    if k < 0:
        raise ValueError("k must be nonnegative")
    return preimage_chain(t, k)[0]


@dataclass(frozen=True)
class RegionImage:
    """Image of the simplex under a word: the triangle with vertices v1, v2, v3."""

    word: tuple
    v1: AngleTriple
    v2: AngleTriple
    v3: AngleTriple

    @property
    def vertices(self):
        return (self.v1, self.v2, self.v3)

    def to_dict(self):
        return {
            "word": format_word(self.word),
            "vertices": [[float(x) for x in v] for v in self.vertices],
        }

    def to_json(self):
        verts = ",".join(
            "[" + ",".join(format_float(x) for x in v) + "]" for v in self.vertices
        )
        return '{"word":%s,"vertices":[%s]}' % (json.dumps(format_word(self.word)), verts)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else text
        vs = [AngleTriple(*map(float, v)) for v in d["vertices"]]
        return cls(parse_word(d["word"]), *vs)


def region_image(word) -> RegionImage:
    w = parse_word(word)
    m = word_matrix(w) * math.pi
    # column j of the product is the image of corner j
    vs = [AngleTriple(*(float(x) for x in m[:, j])) for j in range(3)]
    return RegionImage(w, *vs)


def triangle_minmax_min(v1, v2, v3):
    """Min and max of min(alpha, beta, gamma) over the triangle conv(v1, v2, v3).

    The minimum of a concave function over a triangle sits at a vertex.  The
    maximum sits at a vertex, where an equality locus alpha=beta, beta=gamma or
    alpha=gamma crosses an edge, or at the equilateral point if it is inside.
    """
    verts = [np.asarray(v, dtype=np.float64) for v in (v1, v2, v3)]
    minmin = min(float(v.min()) for v in verts)
    best = max(float(v.min()) for v in verts)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        va, vb = verts[a], verts[b]
        for p, q in ((0, 1), (1, 2), (0, 2)):
            fa = va[p] - va[q]
            fb = vb[p] - vb[q]
            den = fa - fb
            if den == 0.0:
                continue
            s = fa / den
            if 0.0 <= s <= 1.0:
                best = max(best, float((va + s * (vb - va)).min()))
    m = np.column_stack(verts)
    try:
        lam = np.linalg.solve(m, np.full(3, math.pi / 3))
    except np.linalg.LinAlgError:
        lam = None
    if lam is not None and (lam >= -1e-12).all():
        best = max(best, math.pi / 3)
    return minmin, best


def _is_collinear(v1, v2, v3, tol=1e-12):
    e1 = np.subtract(v2, v1)
    e2 = np.subtract(v3, v1)
    return float(np.linalg.norm(np.cross(e1, e2))) <= tol


def region_min_angle_bounds(r: RegionImage):
    """``(minmin, maxmin)``: smallest and largest min-angle over the region.

    A collapsed region emits a DegenerateRegion warning; the bounds are still
    computed over the segment.
    """
    if _is_collinear(*r.vertices):
        warnings.warn(
            f"region {format_word(r.word)!r} is degenerate", DegenerateRegion, stacklevel=2
        )
    return triangle_minmax_min(*r.vertices)


def contraction_check(i, t, s) -> float:
    """Ratio of distances after and before applying M_i; never above sqrt(3)/2."""
    d = distance(t, s)
    if d == 0.0:
        raise ValueError("t and s must differ")
    return distance(apply(i, t), apply(i, s)) / d


def self_similar_indices(t, tol):
    return {i for i in range(1, 7) if similar(apply(i, t), t, tol)}


def solve_all_self_similar(resid_tol=1e-10, dedup_tol=1e-8):
    """Every interior triangle similar to one of its own incenter daughters.

    Solves ``(P @ M_i - I) t = 0`` for each map and each coordinate permutation
    ``P``, restricted to the open simplex.  Returns a list of
    ``(i, permutation, AngleTriple)``; duplicates (same map, same sorted triple)
    are dropped.
    """
    out = []
    for i in range(1, 7):
        for perm in PERMUTATIONS:
            a = np.eye(3)[list(perm)] @ MATRICES[i - 1] - np.eye(3)
            _, sv, vt = np.linalg.svd(a)
            null = vt[sv <= resid_tol]
            for t in _null_space_in_simplex(null):
                if np.linalg.norm(a @ t) > resid_tol:
                    continue
                trip = AngleTriple(*(float(x) for x in t))
                if any(
                    j == i and similar(trip, u, dedup_tol) for j, _, u in out
                ):
                    continue
                out.append((i, perm, trip))
    return out


def _null_space_in_simplex(null):
    # a rank-2 system has a one-dimensional null space: a line through the
    # origin meeting the plane sum = pi in at most one point
    if len(null) == 0:
        return []
    if len(null) > 1:
        # would be a continuum of self-similar triangles; cannot be listed
        raise RuntimeError(f"null space of dimension {len(null)}")
    v = null[0]
    if abs(v.sum()) < 1e-12:
        return []
    t = v * math.pi / v.sum()
    return [t] if (t > 1e-12).all() else []
