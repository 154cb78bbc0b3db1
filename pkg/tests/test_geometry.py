import math

import numpy as np
import pytest
from hypothesis import given, settings

from cevian.errors import CevianFailure, DegenerateTriangle
from cevian.geometry import (
    CENTROID,
    GERGONNE,
    INCENTER,
    LEMOINE,
    CenterStrategy,
    TriangleXY,
    angles_of,
    barycentric_weights,
    center_point,
    subdivide,
    subdivide_xy,
    vertices_from_angles,
)
from cevian.maps import apply
from cevian.simplex import similar

from .conftest import EQUILATERAL, PI, random_triples, triples

ALL = [CENTROID, INCENTER, GERGONNE, LEMOINE, CenterStrategy("weighted", (0.2, 0.3, 0.5))]


def multiset_match(a, b, tol):
    """Greedy matching of two lists of triples up to per-triple permutation."""
    rest = [tuple(sorted(x)) for x in b]
    for x in a:
        key = tuple(sorted(x))
        for k, y in enumerate(rest):
            if all(abs(p - q) <= tol for p, q in zip(key, y)):
                del rest[k]
                break
        else:
            return False
    return not rest


def test_vertices_from_angles_examples():
    tri = vertices_from_angles(EQUILATERAL)
    assert tri.C == pytest.approx((0.5, math.sqrt(3) / 2), abs=1e-15)
    tri = vertices_from_angles((PI / 2, PI / 4, PI / 4))
    assert tri.C == pytest.approx((0.0, 1.0), abs=1e-15)
    with pytest.raises(DegenerateTriangle):
        vertices_from_angles((PI, 0, 0))


@given(triples(min_angle=1e-3))
def test_vertices_angles_round_trip(t):
    assert angles_of(vertices_from_angles(t)) == pytest.approx(t, abs=1e-9)


def test_angles_of_examples():
    eq = TriangleXY((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
    assert angles_of(eq) == pytest.approx(EQUILATERAL, abs=1e-15)
    assert angles_of(TriangleXY((0, 0), (1, 0), (0, 1))) == pytest.approx(
        (PI / 2, PI / 4, PI / 4), abs=1e-15
    )


@given(triples(min_angle=1e-2))
def test_angles_of_similarity_invariant(t):
    tri = np.array(vertices_from_angles(t))
    th = 0.7
    rot = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    moved = (tri @ rot.T) * 3.5 + np.array([2.0, -1.0])
    assert angles_of(TriangleXY(*map(tuple, moved))) == pytest.approx(t, abs=1e-9)


@pytest.mark.parametrize("strategy", ALL[:4])
def test_named_centers_coincide_on_equilateral(strategy):
    tri = vertices_from_angles(EQUILATERAL)
    assert center_point(strategy, tri) == pytest.approx((0.5, math.sqrt(3) / 6), abs=1e-15)


def test_incenter_of_right_isoceles():
    tri = TriangleXY((0, 0), (1, 0), (0, 1))
    x = center_point(INCENTER, tri)
    assert x == pytest.approx((1 / (math.sqrt(2) + 2), 1 / (math.sqrt(2) + 2)), abs=1e-15)


def test_incenter_is_equidistant_from_sides():
    tri = vertices_from_angles((0.4, 1.9, PI - 2.3))
    x = np.array(center_point(INCENTER, tri))
    pts = [np.array(p) for p in tri]
    dists = []
    for p, q in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])):
        e = q - p
        dists.append(abs(e[0] * (x - p)[1] - e[1] * (x - p)[0]) / np.linalg.norm(e))
    assert np.ptp(dists) < 1e-14


def test_gergonne_cevians_hit_tangency_points():
    # the incircle touches BC at distance s - b from B
    tri = vertices_from_angles((0.5, 1.2, PI - 1.7))
    A, B, C = (np.array(p) for p in tri)
    a, b, c = np.linalg.norm(C - B), np.linalg.norm(A - C), np.linalg.norm(B - A)
    s = (a + b + c) / 2
    d = subdivide_xy(GERGONNE, tri)[2][1]  # B-D-X
    assert np.linalg.norm(np.array(d) - B) == pytest.approx(s - b, rel=1e-12)


def test_lemoine_is_reflected_median_intersection():
    # the symmedian from A divides BC in ratio c^2 : b^2
    tri = vertices_from_angles((0.5, 1.2, PI - 1.7))
    A, B, C = (np.array(p) for p in tri)
    b, c = np.linalg.norm(A - C), np.linalg.norm(B - A)
    d = np.array(subdivide_xy(LEMOINE, tri)[2][1])
    ratio = np.linalg.norm(d - B) / np.linalg.norm(C - d)
    assert ratio == pytest.approx(c**2 / b**2, rel=1e-12)


def test_weighted_third_is_centroid():
    tri = vertices_from_angles((0.5, 1.2, PI - 1.7))
    w = CenterStrategy("weighted", (1 / 3, 1 / 3, 1 - 2 / 3))
    assert center_point(w, tri) == pytest.approx(center_point(CENTROID, tri), abs=1e-15)


def test_strategy_parsing_and_validation():
    assert CenterStrategy.parse("lemoine") == LEMOINE
    w = CenterStrategy.parse("weighted:0.2,0.3,0.5")
    assert w.weights == (0.2, 0.3, 0.5)
    assert CenterStrategy.parse(str(w)) == w
    for bad in ("weighted:0.5,0.5,0.5", "weighted:-0.2,0.7,0.5", "foo", "incenter:1,2,3"):
        with pytest.raises(ValueError):
            CenterStrategy.parse(bad)


def test_subdivide_equilateral_incenter():
    kids = subdivide(INCENTER, EQUILATERAL)
    assert len(kids) == 6
    for k in kids:
        assert similar(k, (PI / 6, PI / 3, PI / 2), 1e-12)


def test_subdivide_equilateral_centroid_matches_incenter():
    assert multiset_match(subdivide(CENTROID, EQUILATERAL), subdivide(INCENTER, EQUILATERAL), 1e-12)


def test_incenter_matches_matrices(rng):
    for t in random_triples(rng, 10_000, min_angle=1e-6):
        geo = subdivide(INCENTER, t)
        mats = [apply(i, t) for i in range(1, 7)]
        assert multiset_match(geo, mats, 1e-9)


def test_daughter_order_matches_matrices_in_place():
    # first daughter A-F-X is M_6 t, angle for angle
    t = (0.5, 1.2, PI - 1.7)
    assert subdivide(INCENTER, t)[0] == pytest.approx(apply(6, t), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(triples(min_angle=1e-4))
def test_angle_bookkeeping(t):
    for strategy in ALL:
        kids = subdivide(strategy, t)
        for k in kids:
            assert sum(k) == pytest.approx(PI, abs=1e-9)
            assert min(k) > 0.0
        at_x = sum(k[2] for k in kids)
        assert at_x == pytest.approx(2 * PI, abs=1e-9)
        # A is vertex 0 of A-F-X and vertex 1 of E-A-X, and so on
        assert kids[0][0] + kids[5][1] == pytest.approx(t[0], abs=1e-9)
        assert kids[1][1] + kids[2][0] == pytest.approx(t[1], abs=1e-9)
        assert kids[3][1] + kids[4][0] == pytest.approx(t[2], abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(triples(min_angle=1e-4))
def test_centers_strictly_interior(t):
    tri = vertices_from_angles(t)
    for strategy in ALL:
        assert min(barycentric_weights(strategy, tri)) > 0.0


def test_cevian_failure_for_exterior_point():
    tri = vertices_from_angles(EQUILATERAL)
    bad = CenterStrategy("weighted", (0.2, 0.3, 0.5))
    object.__setattr__(bad, "weights", (1.5, -0.25, -0.25))
    with pytest.raises(CevianFailure):
        subdivide_xy(bad, tri)
