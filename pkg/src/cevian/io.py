"""Text formats: CSV and plain PGM with ``# key=value`` provenance headers.

Readers return ``(meta, payload)`` and accept exactly what the writers emit.
"""

import csv
import io

import numpy as np

from .simplex import format_float
from .stats import CdfBounds, HistogramGrid, cell_count, cell_index_of

PROVENANCE_KEYS = ("command", "strategy", "start", "n", "m", "seed", "generator", "bins", "backend")


def header_lines(meta):
    keys = [k for k in PROVENANCE_KEYS if k in meta] + sorted(k for k in meta if k not in PROVENANCE_KEYS)
    return [f"# {k}={meta[k]}" for k in keys]


def _split_header(text):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif line.strip():
            body.append(line)
    return meta, body


def _join(meta, lines):
    return "\n".join(header_lines(meta) + lines) + "\n"


# -- histogram --------------------------------------------------------------


def histogram_csv(grid: HistogramGrid, meta=None):
    meta = {**grid.meta, **(meta or {}), "bins": grid.bins}
    lines = ["row,col,orientation,count"]
    lines += [f"{r},{c},{o},{n}" for r, c, o, n in grid.rows()]
    return _join(meta, lines)


def read_histogram_csv(text):
    meta, body = _split_header(text)
    bins = int(meta["bins"])
    counts = np.zeros(cell_count(bins), dtype=np.int64)
    for rec in csv.DictReader(io.StringIO("\n".join(body))):
        idx = cell_index_of(int(rec["row"]), int(rec["col"]), int(rec["orientation"]), bins)
        counts[idx] = int(rec["count"])
    return meta, HistogramGrid(bins, counts, meta)


def pgm(grid: HistogramGrid, meta=None, width=None, maxval=255):
    """Plain (P2) greyscale raster, darker = more samples; max count maps to black."""
    img = grid.raster(width)
    top = img.max()
    scaled = np.zeros_like(img) if top == 0 else (img * maxval + top // 2) // top
    pix = maxval - scaled
    meta = {**grid.meta, **(meta or {}), "bins": grid.bins}
    lines = ["P2"] + header_lines(meta) + [f"{img.shape[1]} {img.shape[0]}", str(maxval)]
    lines += [" ".join(str(int(v)) for v in row) for row in pix]
    return "\n".join(lines) + "\n"


def read_pgm(text):
    meta, body = _split_header(text)
    if body[0].strip() != "P2":
        raise ValueError("not a plain PGM")
    width, height = map(int, body[1].split())
    maxval = int(body[2])
    values = np.array(" ".join(body[3:]).split(), dtype=np.int64)
    return meta, values.reshape(height, width), maxval


# -- cdf --------------------------------------------------------------------


def cdf_csv(bounds: CdfBounds, meta=None):
    meta = {**(meta or {}), "n": bounds.generation}
    lines = ["theta,lower,upper"]
    lines += [
        f"{format_float(t)},{format_float(lo)},{format_float(up)}"
        for t, lo, up in zip(bounds.thetas, bounds.lower, bounds.upper)
    ]
    return _join(meta, lines)


def read_cdf_csv(text):
    meta, body = _split_header(text)
    recs = list(csv.DictReader(io.StringIO("\n".join(body))))
    col = lambda k: np.array([float(r[k]) for r in recs])  # noqa: E731
    return meta, CdfBounds(int(meta["n"]), col("theta"), col("lower"), col("upper"))


# -- triples ----------------------------------------------------------------


def triples_csv(triples, meta=None):
    lines = ["alpha,beta,gamma"]
    lines += [",".join(format_float(x) for x in t) for t in np.asarray(triples).reshape(-1, 3)]
    return _join(meta or {}, lines)


def read_triples_csv(text):
    meta, body = _split_header(text)
    rows = [[float(x) for x in line.split(",")] for line in body[1:]]
    return meta, np.array(rows, dtype=np.float64).reshape(-1, 3)
