"""Hot loops: region bounds over 6**n words, generation enumeration, random
walks, daughter geometry and histogram binning.

Each kernel comes as ``<name>_nb`` (numba loops) and ``<name>_np`` (vectorized
numpy).  The unsuffixed names dispatch on ``_accel.USE_NUMBA``.  Both variants
are always importable so the benchmark and the tests can compare them.

Conventions
-----------
* ``mats`` arguments hold word product matrices ``M_i1 @ ... @ M_ik`` (unscaled);
  the region's vertices are ``pi * mats[:, :, j]``.
* Lineage arrays (``choices``) hold daughter indices 0..5, one column per
  subdivision step, first step in column 0.  For the incenter, daughter ``d``
  is ``M_{d+1}``, so a lineage row ``(c1, ..., cn)`` is the word
  ``(cn+1, ..., c1+1)``.
* Center kinds: 0 centroid, 1 incenter, 2 gergonne, 3 lemoine, 4 weighted.
"""

import math

import numpy as np

from . import _accel
from ._accel import njit
from .maps import MATRICES

PI = math.pi
THIRD_PI = math.pi / 3.0
_M = np.ascontiguousarray(MATRICES)

KIND_CODES = {"centroid": 0, "incenter": 1, "gergonne": 2, "lemoine": 3, "weighted": 4}

# vertex ids: A B C D E F X = 0..6; D on BC, E on CA, F on AB
DAUGHTER_VERTICES = np.array(
    [[0, 5, 6], [5, 1, 6], [1, 3, 6], [3, 2, 6], [2, 4, 6], [4, 0, 6]], dtype=np.int64
)


# ---------------------------------------------------------------------------
# region bounds


@njit
def _minmax_min_nb(v):
    # v: 3x3, column j is a vertex
    minmin = np.inf
    best = -np.inf
    for j in range(3):
        m = min(v[0, j], v[1, j], v[2, j])
        minmin = min(minmin, m)
        best = max(best, m)
    for e in range(3):
        a = e
        b = (e + 1) % 3
        for pq in range(3):
            if pq == 0:
                p, q = 0, 1
            elif pq == 1:
                p, q = 1, 2
            else:
                p, q = 0, 2
            fa = v[p, a] - v[q, a]
            fb = v[p, b] - v[q, b]
            den = fa - fb
            if den == 0.0:
                continue
            s = fa / den
            if s >= 0.0 and s <= 1.0:
                m = np.inf
                for r in range(3):
                    m = min(m, v[r, a] + s * (v[r, b] - v[r, a]))
                best = max(best, m)
    # equilateral point inside? Cramer's rule on v @ lam = (pi/3) * ones
    det = (
        v[0, 0] * (v[1, 1] * v[2, 2] - v[1, 2] * v[2, 1])
        - v[0, 1] * (v[1, 0] * v[2, 2] - v[1, 2] * v[2, 0])
        + v[0, 2] * (v[1, 0] * v[2, 1] - v[1, 1] * v[2, 0])
    )
    if det != 0.0:
        e = THIRD_PI
        l0 = e * (
            (v[1, 1] * v[2, 2] - v[1, 2] * v[2, 1])
            - v[0, 1] * (v[2, 2] - v[1, 2])
            + v[0, 2] * (v[2, 1] - v[1, 1])
        ) / det
        l1 = e * (
            v[0, 0] * (v[2, 2] - v[1, 2])
            - (v[1, 0] * v[2, 2] - v[1, 2] * v[2, 0])
            + v[0, 2] * (v[1, 0] - v[2, 0])
        ) / det
        l2 = e * (
            v[0, 0] * (v[1, 1] - v[2, 1])
            - v[0, 1] * (v[1, 0] - v[2, 0])
            + (v[1, 0] * v[2, 1] - v[1, 1] * v[2, 0])
        ) / det
        if l0 >= -1e-12 and l1 >= -1e-12 and l2 >= -1e-12:
            best = max(best, THIRD_PI)
    return minmin, best


@njit
def region_bounds_nb(mats):
    n = mats.shape[0]
    lo = np.empty(n)
    hi = np.empty(n)
    v = np.empty((3, 3))
    for k in range(n):
        for r in range(3):
            for c in range(3):
                v[r, c] = PI * mats[k, r, c]
        a, b = _minmax_min_nb(v)
        lo[k] = a
        hi[k] = b
    return lo, hi


def region_bounds_np(mats):
    v = PI * np.asarray(mats, dtype=np.float64)
    colmin = v.min(axis=1)  # (n, 3): min-angle at each vertex
    lo = colmin.min(axis=1)
    hi = colmin.max(axis=1)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        va = v[:, :, a]
        vb = v[:, :, b]
        for p, q in ((0, 1), (1, 2), (0, 2)):
            fa = va[:, p] - va[:, q]
            fb = vb[:, p] - vb[:, q]
            den = fa - fb
            ok = den != 0.0
            s = np.divide(fa, den, out=np.full_like(fa, -1.0), where=ok)
            ok &= (s >= 0.0) & (s <= 1.0)
            pt = va + s[:, None] * (vb - va)
            hi = np.where(ok, np.maximum(hi, pt.min(axis=1)), hi)
    c00 = v[:, 1, 1] * v[:, 2, 2] - v[:, 1, 2] * v[:, 2, 1]
    det = (
        v[:, 0, 0] * c00
        - v[:, 0, 1] * (v[:, 1, 0] * v[:, 2, 2] - v[:, 1, 2] * v[:, 2, 0])
        + v[:, 0, 2] * (v[:, 1, 0] * v[:, 2, 1] - v[:, 1, 1] * v[:, 2, 0])
    )
    e = THIRD_PI
    nz = det != 0.0
    safe = np.where(nz, det, 1.0)
    l0 = e * (
        c00 - v[:, 0, 1] * (v[:, 2, 2] - v[:, 1, 2]) + v[:, 0, 2] * (v[:, 2, 1] - v[:, 1, 1])
    ) / safe
    l1 = e * (
        v[:, 0, 0] * (v[:, 2, 2] - v[:, 1, 2])
        - (v[:, 1, 0] * v[:, 2, 2] - v[:, 1, 2] * v[:, 2, 0])
        + v[:, 0, 2] * (v[:, 1, 0] - v[:, 2, 0])
    ) / safe
    l2 = e * (
        v[:, 0, 0] * (v[:, 1, 1] - v[:, 2, 1])
        - v[:, 0, 1] * (v[:, 1, 0] - v[:, 2, 0])
        + (v[:, 1, 0] * v[:, 2, 1] - v[:, 1, 1] * v[:, 2, 0])
    ) / safe
    inside = nz & (l0 >= -1e-12) & (l1 >= -1e-12) & (l2 >= -1e-12)
    hi = np.where(inside, np.maximum(hi, THIRD_PI), hi)
    return lo, hi


@njit
def _matmul3(a, b, out):
    for r in range(3):
        for c in range(3):
            out[r, c] = a[r, 0] * b[0, c] + a[r, 1] * b[1, c] + a[r, 2] * b[2, c]


@njit
def word_bounds_nb(prefix, depth):
    """Bounds for every word ``prefix + suffix`` with ``len(suffix) == depth``,
    suffixes in lexicographic order (first letter most significant)."""
    total = 6**depth
    lo = np.empty(total)
    hi = np.empty(total)
    prods = np.empty((depth + 1, 3, 3))
    prods[0] = prefix
    digits = np.zeros(depth, dtype=np.int64)
    for lev in range(depth):
        _matmul3(prods[lev], _M[0], prods[lev + 1])
    v = np.empty((3, 3))
    for w in range(total):
        if w > 0:
            # odometer increment; recompute products from the changed level on
            lev = depth - 1
            while digits[lev] == 5:
                digits[lev] = 0
                lev -= 1
            digits[lev] += 1
            for k in range(lev, depth):
                _matmul3(prods[k], _M[digits[k]], prods[k + 1])
        for r in range(3):
            for c in range(3):
                v[r, c] = PI * prods[depth, r, c]
        a, b = _minmax_min_nb(v)
        lo[w] = a
        hi[w] = b
    return lo, hi


def word_mats_np(prefix, depth):
    p = np.asarray(prefix, dtype=np.float64)[None]
    for _ in range(depth):
        p = np.einsum("wab,ibc->wiac", p, _M).reshape(-1, 3, 3)
    return p


def word_bounds_np(prefix, depth):
    return region_bounds_np(word_mats_np(prefix, depth))


# ---------------------------------------------------------------------------
# incenter generations and walks


@njit
def incenter_generation_nb(start, n):
    cur = np.empty((1, 3))
    cur[0] = start
    for _ in range(n):
        nxt = np.empty((cur.shape[0] * 6, 3))
        for w in range(cur.shape[0]):
            for d in range(6):
                for r in range(3):
                    nxt[w * 6 + d, r] = (
                        _M[d, r, 0] * cur[w, 0] + _M[d, r, 1] * cur[w, 1] + _M[d, r, 2] * cur[w, 2]
                    )
        cur = nxt
    return cur


def incenter_generation_np(start, n):
    cur = np.asarray(start, dtype=np.float64)[None]
    for _ in range(n):
        cur = np.einsum("dab,wb->wda", _M, cur).reshape(-1, 3)
    return cur


@njit
def incenter_walks_nb(start, choices):
    m, n = choices.shape
    out = np.empty((m, 3))
    for k in range(m):
        a, b, c = start[0], start[1], start[2]
        for j in range(n):
            d = choices[k, j]
            a, b, c = (
                _M[d, 0, 0] * a + _M[d, 0, 1] * b + _M[d, 0, 2] * c,
                _M[d, 1, 0] * a + _M[d, 1, 1] * b + _M[d, 1, 2] * c,
                _M[d, 2, 0] * a + _M[d, 2, 1] * b + _M[d, 2, 2] * c,
            )
        out[k, 0] = a
        out[k, 1] = b
        out[k, 2] = c
    return out


def incenter_walks_np(start, choices):
    choices = np.asarray(choices)
    out = np.tile(np.asarray(start, dtype=np.float64), (choices.shape[0], 1))
    for j in range(choices.shape[1]):
        out = np.einsum("kab,kb->ka", _M[choices[:, j]], out)
    return out


# ---------------------------------------------------------------------------
# geometric subdivision (any center)
#
# The triangle with angles (al, be, ga) is placed with side lengths equal to the
# sines of the opposite angles: A = (0, 0), B = (sin ga, 0),
# C = sin be * (cos al, sin al).  All coordinates stay bounded for flat triangles.


@njit
def _center_weights_nb(al, be, ga, kind, p):
    if kind == 0:
        w0, w1, w2 = 1.0, 1.0, 1.0
    elif kind == 1:
        w0, w1, w2 = math.sin(al), math.sin(be), math.sin(ga)
    elif kind == 2:
        # 1/(s - a) : ... equals tan(al/2) : tan(be/2) : tan(ga/2)
        w0, w1, w2 = math.tan(0.5 * al), math.tan(0.5 * be), math.tan(0.5 * ga)
    elif kind == 3:
        w0, w1, w2 = math.sin(al) ** 2, math.sin(be) ** 2, math.sin(ga) ** 2
    else:
        w0, w1, w2 = p[0], p[1], p[2]
    s = w0 + w1 + w2
    return w0 / s, w1 / s, w2 / s


@njit
def _angle_at(px, py, qx, qy, rx, ry):
    ux, uy = qx - px, qy - py
    vx, vy = rx - px, ry - py
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


@njit
def _points_nb(al, be, ga, kind, p, pts):
    w0, w1, w2 = _center_weights_nb(al, be, ga, kind, p)
    bx = math.sin(ga)
    cx = math.sin(be) * math.cos(al)
    cy = math.sin(be) * math.sin(al)
    pts[0, 0], pts[0, 1] = 0.0, 0.0
    pts[1, 0], pts[1, 1] = bx, 0.0
    pts[2, 0], pts[2, 1] = cx, cy
    # Cevian feet from barycentric weights
    pts[3, 0] = (w1 * bx + w2 * cx) / (w1 + w2)
    pts[3, 1] = (w2 * cy) / (w1 + w2)
    pts[4, 0] = (w2 * cx) / (w0 + w2)
    pts[4, 1] = (w2 * cy) / (w0 + w2)
    pts[5, 0] = (w1 * bx) / (w0 + w1)
    pts[5, 1] = 0.0
    pts[6, 0] = w1 * bx + w2 * cx
    pts[6, 1] = w2 * cy


@njit
def daughters_nb(tris, kind, p):
    n = tris.shape[0]
    out = np.empty((n, 6, 3))
    pts = np.empty((7, 2))
    for k in range(n):
        _points_nb(tris[k, 0], tris[k, 1], tris[k, 2], kind, p, pts)
        for d in range(6):
            for j in range(3):
                i0 = DAUGHTER_VERTICES[d, j]
                i1 = DAUGHTER_VERTICES[d, (j + 1) % 3]
                i2 = DAUGHTER_VERTICES[d, (j + 2) % 3]
                out[k, d, j] = _angle_at(
                    pts[i0, 0], pts[i0, 1], pts[i1, 0], pts[i1, 1], pts[i2, 0], pts[i2, 1]
                )
    return out


@njit
def geometric_walks_nb(start, choices, kind, p):
    m, n = choices.shape
    out = np.empty((m, 3))
    pts = np.empty((7, 2))
    t = np.empty(3)
    for k in range(m):
        t[0], t[1], t[2] = start[0], start[1], start[2]
        for j in range(n):
            d = choices[k, j]
            _points_nb(t[0], t[1], t[2], kind, p, pts)
            a0 = DAUGHTER_VERTICES[d, 0]
            a1 = DAUGHTER_VERTICES[d, 1]
            a2 = DAUGHTER_VERTICES[d, 2]
            x0 = _angle_at(pts[a0, 0], pts[a0, 1], pts[a1, 0], pts[a1, 1], pts[a2, 0], pts[a2, 1])
            x1 = _angle_at(pts[a1, 0], pts[a1, 1], pts[a2, 0], pts[a2, 1], pts[a0, 0], pts[a0, 1])
            x2 = _angle_at(pts[a2, 0], pts[a2, 1], pts[a0, 0], pts[a0, 1], pts[a1, 0], pts[a1, 1])
            t[0], t[1], t[2] = x0, x1, x2
        out[k] = t
    return out


def _center_weights_np(tris, kind, p):
    al, be, ga = tris[:, 0], tris[:, 1], tris[:, 2]
    if kind == 0:
        w = np.ones_like(tris)
    elif kind == 1:
        w = np.sin(tris)
    elif kind == 2:
        w = np.tan(0.5 * tris)
    elif kind == 3:
        w = np.sin(tris) ** 2
    else:
        w = np.broadcast_to(np.asarray(p, dtype=np.float64), tris.shape)
    del al, be, ga
    return w / w.sum(axis=1, keepdims=True)


def _points_np(tris, kind, p):
    tris = np.asarray(tris, dtype=np.float64)
    w = _center_weights_np(tris, kind, p)
    w0, w1, w2 = w[:, 0], w[:, 1], w[:, 2]
    n = tris.shape[0]
    bx = np.sin(tris[:, 2])
    cx = np.sin(tris[:, 1]) * np.cos(tris[:, 0])
    cy = np.sin(tris[:, 1]) * np.sin(tris[:, 0])
    zero = np.zeros(n)
    pts = np.empty((n, 7, 2))
    pts[:, 0] = np.stack([zero, zero], axis=1)
    pts[:, 1] = np.stack([bx, zero], axis=1)
    pts[:, 2] = np.stack([cx, cy], axis=1)
    pts[:, 3] = np.stack([(w1 * bx + w2 * cx) / (w1 + w2), (w2 * cy) / (w1 + w2)], axis=1)
    pts[:, 4] = np.stack([(w2 * cx) / (w0 + w2), (w2 * cy) / (w0 + w2)], axis=1)
    pts[:, 5] = np.stack([(w1 * bx) / (w0 + w1), zero], axis=1)
    pts[:, 6] = np.stack([w1 * bx + w2 * cx, w2 * cy], axis=1)
    return pts


def _angles_np(tri_pts):
    # tri_pts: (..., 3, 2) -> (..., 3) interior angles
    out = []
    for j in range(3):
        p0 = tri_pts[..., j, :]
        p1 = tri_pts[..., (j + 1) % 3, :]
        p2 = tri_pts[..., (j + 2) % 3, :]
        u = p1 - p0
        v = p2 - p0
        cross = np.abs(u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0])
        dot = u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1]
        out.append(np.arctan2(cross, dot))
    return np.stack(out, axis=-1)


def daughters_np(tris, kind, p):
    pts = _points_np(tris, kind, p)
    return _angles_np(pts[:, DAUGHTER_VERTICES])


def geometric_walks_np(start, choices, kind, p):
    choices = np.asarray(choices)
    m = choices.shape[0]
    t = np.tile(np.asarray(start, dtype=np.float64), (m, 1))
    rows = np.arange(m)
    for j in range(choices.shape[1]):
        pts = _points_np(t, kind, p)
        t = _angles_np(pts[rows[:, None], DAUGHTER_VERTICES[choices[:, j]]])
    return t


# ---------------------------------------------------------------------------
# histogram cells
#
# Barycentric grid with ``bins`` cells per side: x = bins*alpha/pi, y = bins*beta/pi.
# Row i = ceil(x) - 1, column j = ceil(y) - 1 (clamped), upright when the
# fractional parts sum to <= 1, inverted otherwise.  Points on a shared edge
# thus land in the cell with the smaller linear index
#     index = i * (2*bins - i) + 2*j + (1 if inverted else 0).


@njit
def cell_index_nb(samples, bins):
    n = samples.shape[0]
    out = np.empty(n, dtype=np.int64)
    for k in range(n):
        x = samples[k, 0] * bins / PI
        y = samples[k, 1] * bins / PI
        i = int(math.ceil(x)) - 1
        i = min(max(i, 0), bins - 1)
        j = int(math.ceil(y)) - 1
        j = min(max(j, 0), bins - 1 - i)
        inv = 1 if (x - i) + (y - j) > 1.0 and i + j <= bins - 2 else 0
        out[k] = i * (2 * bins - i) + 2 * j + inv
    return out


def cell_index_np(samples, bins):
    samples = np.asarray(samples, dtype=np.float64)
    x = samples[:, 0] * bins / PI
    y = samples[:, 1] * bins / PI
    i = np.clip(np.ceil(x).astype(np.int64) - 1, 0, bins - 1)
    j = np.clip(np.ceil(y).astype(np.int64) - 1, 0, bins - 1 - i)
    inv = (((x - i) + (y - j)) > 1.0) & (i + j <= bins - 2)
    return i * (2 * bins - i) + 2 * j + inv.astype(np.int64)


# ---------------------------------------------------------------------------
# dispatch


def _pick(nb, np_):
    return nb if _accel.USE_NUMBA else np_


def region_bounds(mats):
    return _pick(region_bounds_nb, region_bounds_np)(np.ascontiguousarray(mats, dtype=np.float64))


def word_bounds(prefix, depth):
    return _pick(word_bounds_nb, word_bounds_np)(
        np.ascontiguousarray(prefix, dtype=np.float64), int(depth)
    )


def incenter_generation(start, n):
    return _pick(incenter_generation_nb, incenter_generation_np)(
        np.asarray(start, dtype=np.float64), int(n)
    )


def incenter_walks(start, choices):
    return _pick(incenter_walks_nb, incenter_walks_np)(
        np.asarray(start, dtype=np.float64), np.ascontiguousarray(choices, dtype=np.int64)
    )


def daughters(tris, kind, p):
    return _pick(daughters_nb, daughters_np)(
        np.ascontiguousarray(tris, dtype=np.float64), int(kind), np.asarray(p, dtype=np.float64)
    )


def geometric_walks(start, choices, kind, p):
    return _pick(geometric_walks_nb, geometric_walks_np)(
        np.asarray(start, dtype=np.float64),
        np.ascontiguousarray(choices, dtype=np.int64),
        int(kind),
        np.asarray(p, dtype=np.float64),
    )


def cell_index(samples, bins):
    return _pick(cell_index_nb, cell_index_np)(
        np.ascontiguousarray(samples, dtype=np.float64), int(bins)
    )
