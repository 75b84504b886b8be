import numpy as np
import pytest
from hypothesis import strategies as st

from conicverify.geom_core import HomLine, HomPoint

finite_coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


def _triple_ok(t):
    return max(abs(c) for c in t) > 1e-3


@st.composite
def complex_triples(draw):
    re = draw(st.tuples(finite_coord, finite_coord, finite_coord))
    im = draw(st.tuples(finite_coord, finite_coord, finite_coord))
    t = tuple(complex(a, b) for a, b in zip(re, im))
    if not _triple_ok(t):
        t = (t[0] + 1.0, t[1], t[2])
    return t


@st.composite
def hom_points(draw):
    return HomPoint(draw(complex_triples()))


@st.composite
def hom_lines(draw):
    return HomLine(draw(complex_triples()))


nonzero_scalars = st.builds(
    complex,
    st.floats(min_value=-5, max_value=5, allow_nan=False),
    st.floats(min_value=-5, max_value=5, allow_nan=False),
).filter(lambda z: abs(z) > 1e-2)


@st.composite
def invertible_transforms(draw):
    rows = [draw(complex_triples()) for _ in range(3)]
    M = np.array(rows, dtype=complex)
    M = M / np.linalg.norm(M) * np.sqrt(3.0)
    if abs(np.linalg.det(M)) < 0.05:
        M = M + 0.8 * np.eye(3)
    return M


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
