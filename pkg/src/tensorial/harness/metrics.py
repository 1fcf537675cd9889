"""Image quality and classification metrics."""

import math

import numpy as np

from ..errors import DataError, ShapeError

MAX_VALUE = 255.0


def psnr(x, x_hat, max_val=MAX_VALUE, exact_tol=0.0):
    """Peak signal-to-noise ratio in dB.

    ``20 * log10(max_val * sqrt(N) / ||x - x_hat||_F)`` with ``N`` the number
    of entries.  Returns ``inf`` when the error norm is at most
    ``exact_tol * max(||x||_F, 1)``, in particular for an exact match.
    """
    x = np.asarray(x, dtype=np.float64)
    x_hat = np.asarray(x_hat, dtype=np.float64)
    if x.shape != x_hat.shape:
        raise ShapeError(f"shapes differ: {x.shape} vs {x_hat.shape}")
    if max_val <= 0:
        raise ValueError("max_val must be positive")
    err = float(np.linalg.norm(x - x_hat))
    if err <= exact_tol * max(float(np.linalg.norm(x)), 1.0):
        return math.inf
    return 20.0 * math.log10(max_val * math.sqrt(x.size) / err)


def _labels(pred, truth):
    pred = np.asarray(pred).reshape(-1)
    truth = np.asarray(truth).reshape(-1)
    if pred.size == 0 or pred.size != truth.size:
        raise DataError(f"need equal-length nonempty label arrays, got {pred.size} and {truth.size}")
    return pred, truth


def overall_accuracy(pred, truth):
    pred, truth = _labels(pred, truth)
    return float(np.mean(pred == truth))


def kappa(pred, truth):
    """Cohen's kappa; 1.0 when the chance-agreement term leaves nothing to explain."""
    pred, truth = _labels(pred, truth)
    k = pred.size
    correct = int(np.sum(pred == truth))
    classes = np.union1d(pred, truth)
    chance = sum(int(np.sum(truth == c)) * int(np.sum(pred == c)) for c in classes)
    denom = k * k - chance
    if denom == 0:
        return 1.0
    return (k * correct - chance) / denom
