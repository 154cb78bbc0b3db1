"""Coordinate geometry of one subdivision step for an arbitrary interior point.

The named centers use their barycentric coordinates (a, b, c are the side
lengths opposite A, B, C and s the semiperimeter):

=========  ==============================
centroid   1 : 1 : 1
incenter   a : b : c
gergonne   1/(s-a) : 1/(s-b) : 1/(s-c)
lemoine    a^2 : b^2 : c^2
weighted   p0 : p1 : p2
=========  ==============================

The Gergonne row is the same point as the meeting of the Cevians to the
incircle's tangency points, and the Lemoine row is the meeting of the medians
reflected in the angle bisectors (the symmedian point).
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from . import kernels
from .errors import CevianFailure, DegenerateTriangle
from .simplex import AngleTriple

ANGLE_FLOOR = 1e-9
AREA_FLOOR = 1e-12

KINDS = ("centroid", "incenter", "gergonne", "lemoine", "weighted")


@dataclass(frozen=True)
class CenterStrategy:
    kind: str
    weights: Optional[Tuple[float, float, float]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown center {self.kind!r}; expected one of {KINDS}")
        if self.kind == "weighted":
            if self.weights is None or len(self.weights) != 3:
                raise ValueError("weighted center needs three weights")
            w = tuple(float(x) for x in self.weights)
            if min(w) <= 0.0 or abs(sum(w) - 1.0) > 1e-12:
                raise ValueError(f"weights must be positive and sum to 1, got {w}")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise ValueError(f"{self.kind} takes no weights")

    @classmethod
    def parse(cls, text: str) -> "CenterStrategy":
        """``incenter`` or ``weighted:0.2,0.3,0.5``."""
        kind, _, rest = text.partition(":")
        if kind == "weighted":
            return cls("weighted", tuple(float(x) for x in rest.split(",")))
        if rest:
            raise ValueError(f"{kind} takes no weights")
        return cls(kind)

    def __str__(self):
        if self.kind == "weighted":
            return "weighted:" + ",".join(format(x, ".17g") for x in self.weights)
        return self.kind

    @property
    def code(self) -> int:
        return kernels.KIND_CODES[self.kind]

    @property
    def kernel_weights(self) -> np.ndarray:
        return np.asarray(self.weights if self.weights else (1 / 3, 1 / 3, 1 / 3))


CENTROID = CenterStrategy("centroid")
INCENTER = CenterStrategy("incenter")
GERGONNE = CenterStrategy("gergonne")
LEMOINE = CenterStrategy("lemoine")


class TriangleXY(NamedTuple):
    A: Tuple[float, float]
    B: Tuple[float, float]
    C: Tuple[float, float]


def _signed_area(tri):
    (ax, ay), (bx, by), (cx, cy) = tri
    return 0.5 * ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def vertices_from_angles(t) -> TriangleXY:
    """Place A=(0,0), B=(1,0) and C above AB so the angles at A, B, C are t."""
    al, be, ga = t
    if min(t) <= ANGLE_FLOOR:
        raise DegenerateTriangle(f"angles {tuple(t)} too small to build a triangle")
    b = math.sin(be) / math.sin(ga)
    return TriangleXY((0.0, 0.0), (1.0, 0.0), (b * math.cos(al), b * math.sin(al)))


def _angle(p, q, r):
    ux, uy = q[0] - p[0], q[1] - p[1]
    vx, vy = r[0] - p[0], r[1] - p[1]
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def angles_of(tri) -> AngleTriple:
    A, B, C = tri
    return AngleTriple(_angle(A, B, C), _angle(B, C, A), _angle(C, A, B))


def _side_lengths(tri):
    A, B, C = tri
    return math.dist(B, C), math.dist(C, A), math.dist(A, B)


def barycentric_weights(strategy: CenterStrategy, tri):
    a, b, c = _side_lengths(tri)
    kind = strategy.kind
    if kind == "centroid":
        w = (1.0, 1.0, 1.0)
    elif kind == "incenter":
        w = (a, b, c)
    elif kind == "gergonne":
        s = 0.5 * (a + b + c)
        w = (1.0 / (s - a), 1.0 / (s - b), 1.0 / (s - c))
    elif kind == "lemoine":
        w = (a * a, b * b, c * c)
    else:
        w = strategy.weights
    total = sum(w)
    return tuple(x / total for x in w)


def center_point(strategy: CenterStrategy, tri):
    w = barycentric_weights(strategy, tri)
    return tuple(sum(wi * p[k] for wi, p in zip(w, tri)) for k in range(2))


def _cevian_foot(vertex, center, p, q):
    """Where the line vertex->center meets segment pq."""
    dx, dy = center[0] - vertex[0], center[1] - vertex[1]
    ex, ey = q[0] - p[0], q[1] - p[1]
    den = dx * ey - dy * ex
    if den == 0.0:
        raise CevianFailure("Cevian parallel to the opposite side")
    s = ((p[0] - vertex[0]) * dy - (p[1] - vertex[1]) * dx) / den
    if not (-ANGLE_FLOOR < s < 1.0 + ANGLE_FLOOR):
        raise CevianFailure(f"Cevian foot outside its edge (parameter {s!r})")
    return (p[0] + s * ex, p[1] + s * ey)


def subdivide_xy(strategy: CenterStrategy, tri):
    """The six daughter triangles in the order A-F-X, F-B-X, B-D-X, D-C-X,
    C-E-X, E-A-X, as vertex triples."""
    A, B, C = tri
    if _signed_area(tri) <= AREA_FLOOR:
        raise DegenerateTriangle("triangle is collinear or clockwise")
    X = center_point(strategy, tri)
    D = _cevian_foot(A, X, B, C)
    E = _cevian_foot(B, X, C, A)
    F = _cevian_foot(C, X, A, B)
    return [(A, F, X), (F, B, X), (B, D, X), (D, C, X), (C, E, X), (E, A, X)]


def subdivide(strategy: CenterStrategy, t):
    """Angle triples of the six daughters of ``t`` (see subdivide_xy for order)."""
    tri = vertices_from_angles(t)
    return [angles_of(d) for d in subdivide_xy(strategy, tri)]
