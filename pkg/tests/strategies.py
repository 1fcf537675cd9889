"""Hypothesis strategies shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

SCALAR_SHAPES = [(1,), (2,), (4,), (3, 3), (2, 2, 2), (2, 3)]


@st.composite
def arrays(draw, shape, complex_=None):
    seed = draw(st.integers(0, 2**32 - 1))
    if complex_ is None:
        complex_ = draw(st.booleans())
    rng = np.random.default_rng(seed)
    a = rng.normal(size=shape)
    if complex_:
        a = a + 1j * rng.normal(size=shape)
    return a


scalar_shapes = st.sampled_from(SCALAR_SHAPES)


@st.composite
def tscalar_arrays(draw, count=1, complex_=None):
    shape = draw(scalar_shapes)
    out = [draw(arrays(shape, complex_)) for _ in range(count)]
    return out if count > 1 else out[0]


@st.composite
def tmatrix_arrays(draw, max_dim=5, complex_=None, scalar_shape=None):
    shape = scalar_shape or draw(st.sampled_from([(1,), (3,), (2, 2), (2, 3)]))
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    return draw(arrays(tuple(shape) + (rows, cols), complex_)), len(shape)
