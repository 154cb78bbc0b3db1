"""Triangles as points of the angle simplex.

A triangle up to similarity is a triple of angles (alpha, beta, gamma), all
nonnegative and summing to pi.  The set of such triples is a closed
equilateral triangle in R^3; its corners are the degenerate triangles.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import NegativeAngle, SumViolation

TOL_SUM = 1e-9
SQRT3 = math.sqrt(3.0)

#: corners of the simplex, in the order (pi,0,0), (0,pi,0), (0,0,pi)
CORNERS = ((math.pi, 0.0, 0.0), (0.0, math.pi, 0.0), (0.0, 0.0, math.pi))

#: diameter of the simplex in the ambient Euclidean norm
DIAMETER = math.pi * math.sqrt(2.0)

#: ratio between planar-embedding distances and ambient distances
EMBED_SCALE = math.sqrt(2.0 / 3.0)


class AngleTriple(NamedTuple):
    alpha: float
    beta: float
    gamma: float

    @property
    def is_degenerate(self) -> bool:
        return min(self) <= 0.0

    def sorted(self) -> "AngleTriple":
        return AngleTriple(*sorted(self))

    def to_text(self) -> str:
        return format_triple(self)


class PlanePoint2D(NamedTuple):
    u: float
    v: float


def make_triple(alpha: float, beta: float, gamma: float) -> AngleTriple:
    """Validate three angles (radians) and return them as an AngleTriple.

    Nothing is renormalized.  Coordinates in ``[-TOL_SUM, 0)`` are clamped to 0.

    Raises
    ------
    SumViolation
        If the angles do not sum to pi within ``TOL_SUM``.
    NegativeAngle
        If an angle is below ``-TOL_SUM``.
    """
    vals = (float(alpha), float(beta), float(gamma))
    if not all(math.isfinite(x) for x in vals):
        raise ValueError(f"non-finite angle in {vals!r}")
    for x in vals:
        if x < -TOL_SUM:
            raise NegativeAngle(f"angle {x!r} is negative")
    if abs(sum(vals) - math.pi) > TOL_SUM:
        raise SumViolation(f"angles {vals!r} sum to {sum(vals)!r}, not pi")
    return AngleTriple(*(0.0 if x < 0.0 else x for x in vals))


def min_angle(t) -> float:
    return min(t)


def distance(t, s) -> float:
    """Ambient Euclidean distance between two triples."""
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(t, s)))


def embed_2d(t) -> PlanePoint2D:
    """Map a triple to the plane as ((alpha + 2 beta)/sqrt3, alpha).

    Distances scale uniformly by ``EMBED_SCALE`` under this map.
    """
    a, b, _ = t
    return PlanePoint2D((a + 2.0 * b) / SQRT3, a)


def similar(t, s, tol: float) -> bool:
    """True iff the sorted angle vectors agree componentwise within ``tol``."""
    return all(abs(a - b) <= tol for a, b in zip(sorted(t), sorted(s)))


def format_float(x) -> str:
    return format(float(x), ".17g")


def format_triple(t) -> str:
    return ",".join(format_float(x) for x in t)


def parse_triple(text: str, degrees: bool = False, rescale: float = 0.0) -> AngleTriple:
    """Parse the canonical ``a,b,c`` text form.

    With ``rescale > 0`` the angles are scaled to sum exactly to pi when their
    sum is within a relative ``rescale`` of pi (for hand-typed, rounded input).
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated angles, got {text!r}")
    vals = [float(p) for p in parts]
    if degrees:
        vals = [math.radians(v) for v in vals]
    total = sum(vals)
    if rescale > 0.0 and abs(total - math.pi) <= rescale * math.pi:
        vals = [v * math.pi / total for v in vals]
    return make_triple(*vals)


def random_triples(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform samples from the simplex, shape (size, 3)."""
    return rng.dirichlet((1.0, 1.0, 1.0), size=size) * math.pi
