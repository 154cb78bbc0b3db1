import math

import numpy as np
import pytest
from hypothesis import strategies as st

from cevian import _accel
from cevian.simplex import make_triple

PI = math.pi
EQUILATERAL = (PI / 3, PI / 3, PI / 3)


@st.composite
def triples(draw, min_angle=0.0):
    """Points of the angle simplex, optionally bounded away from its edges."""
    a = draw(st.floats(min_value=0.0, max_value=1.0))
    b = draw(st.floats(min_value=0.0, max_value=1.0))
    if a + b > 1.0:
        a, b = 1.0 - a, 1.0 - b
    free = PI - 3 * min_angle
    x = min_angle + a * free
    y = min_angle + b * free
    return make_triple(x, y, max(PI - x - y, 0.0))


def random_triples(rng, size, min_angle=0.0):
    w = rng.dirichlet((1.0, 1.0, 1.0), size=size)
    return min_angle + w * (PI - 3 * min_angle)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once through each kernel path."""
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_accel, "USE_NUMBA", request.param == "numba")
    return request.param


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT):
            terminalreporter.write_line(line)
