import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorial.errors import DataError, ShapeError
from tensorial.harness.metrics import kappa, overall_accuracy, psnr


def test_psnr_examples():
    x = np.full((4, 5), 255.0)
    assert psnr(x, x) == math.inf
    assert math.isclose(psnr(x, x - 1), 20 * math.log10(255), rel_tol=1e-12)
    assert math.isclose(psnr(np.full(7, 255.0), np.full(7, 254.0)), 48.1308036086791, rel_tol=1e-12)


def test_psnr_exact_tolerance():
    x = np.full((3, 3), 100.0)
    assert psnr(x, x + 1e-12, exact_tol=1e-9) == math.inf
    assert math.isfinite(psnr(x, x + 1e-12))


def test_psnr_shape_mismatch():
    with pytest.raises(ShapeError):
        psnr(np.zeros(3), np.zeros(4))


def test_accuracy_examples():
    truth = np.array([1, 2, 3, 1])
    assert overall_accuracy(truth, truth) == 1.0
    assert kappa(truth, truth) == 1.0
    truth = np.array([1] * 50 + [2] * 50)
    pred = np.ones(100, dtype=int)
    assert overall_accuracy(pred, truth) == 0.5
    assert kappa(pred, truth) == 0.0


def test_accuracy_errors():
    with pytest.raises(DataError):
        overall_accuracy([], [])
    with pytest.raises(DataError):
        kappa([1, 2], [1])


@given(st.integers(0, 2**32 - 1))
def test_kappa_at_most_oa(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 60))
    pred, truth = rng.integers(0, 4, size=(2, n))
    assert kappa(pred, truth) <= overall_accuracy(pred, truth) + 1e-12
