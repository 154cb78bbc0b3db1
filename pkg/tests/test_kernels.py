"""The numba and numpy variants of every kernel must agree."""

import numpy as np
import pytest

from cevian import kernels as K
from cevian.maps import apply_word, word_matrix

from .conftest import EQUILATERAL, random_triples

pytestmark = pytest.mark.skipif(not K._accel.HAVE_NUMBA, reason="numba not installed")

W = np.array([0.2, 0.3, 0.5])


def test_region_bounds(rng):
    mats = np.stack([word_matrix(rng.integers(1, 7, size=rng.integers(0, 9))) for _ in range(3000)])
    a = K.region_bounds_nb(mats)
    b = K.region_bounds_np(mats)
    np.testing.assert_allclose(a[0], b[0], rtol=0, atol=1e-12)
    np.testing.assert_allclose(a[1], b[1], rtol=0, atol=1e-12)


@pytest.mark.parametrize("depth", [0, 1, 3, 5])
def test_word_bounds_order(depth):
    prefix = word_matrix([2, 5])
    a = K.word_bounds_nb(prefix, depth)
    b = K.word_bounds_np(prefix, depth)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)
    # suffixes in lexicographic order: row w is prefix + digits of w
    mats = K.word_mats_np(prefix, depth)
    w = 6**depth - 7 if depth > 1 else 0
    digits = [int(d) + 1 for d in np.base_repr(w, 6).zfill(depth)] if depth else []
    np.testing.assert_allclose(mats[w], word_matrix([2, 5] + digits), atol=1e-15)


@pytest.mark.parametrize("n", [0, 1, 4])
def test_incenter_generation(n):
    a = K.incenter_generation_nb(np.array(EQUILATERAL), n)
    b = K.incenter_generation_np(np.array(EQUILATERAL), n)
    assert a.shape == (6**n, 3)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)


def test_incenter_walks_are_reversed_words(rng):
    ch = rng.integers(0, 6, size=(500, 12))
    start = np.array([0.3, 1.0, np.pi - 1.3])
    a = K.incenter_walks_nb(start, ch)
    b = K.incenter_walks_np(start, ch)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)
    for row, out in zip(ch[:20], a[:20]):
        word = [int(d) + 1 for d in row[::-1]]
        np.testing.assert_allclose(out, apply_word(word, start), atol=1e-14)


@pytest.mark.parametrize("kind", range(5))
def test_daughters(rng, kind):
    tris = random_triples(rng, 500, min_angle=1e-6)
    np.testing.assert_allclose(K.daughters_nb(tris, kind, W), K.daughters_np(tris, kind, W), atol=1e-13)


@pytest.mark.parametrize("kind", range(5))
def test_geometric_walks(rng, kind):
    ch = rng.integers(0, 6, size=(300, 15))
    a = K.geometric_walks_nb(np.array(EQUILATERAL), ch, kind, W)
    b = K.geometric_walks_np(np.array(EQUILATERAL), ch, kind, W)
    np.testing.assert_allclose(a, b, atol=1e-9)


def test_cell_index(rng):
    pts = random_triples(rng, 20000)
    grid = np.array([[i, j, 12 - i - j] for i in range(13) for j in range(13 - i)]) * np.pi / 12
    pts = np.vstack([pts, grid])
    for bins in (1, 2, 7, 60):
        assert np.array_equal(K.cell_index_nb(pts, bins), K.cell_index_np(pts, bins))
