"""Generalized tensors: order-M arrays of t-scalars.

A :class:`GTensor` with dimensions ``(D_1, ..., D_M)`` stores an array of shape
``I + (D_1, ..., D_M)``.  Mode indices are zero-based.

The mode-k flattening lays mode ``k`` along the rows; the columns run over the
remaining modes in ascending order with the earliest of them varying fastest.
Mode-k multiplication is defined through that flattening, so
``gt_flatten(gt_mode_mul(x, k, y), k) == y @ gt_flatten(x, k)``.
"""

import numbers

import numpy as np

from ._base import TArray
from .errors import ShapeError
from .tmatrix import TMatrix, tm_mul
from .tscalar import TScalar


class GTensor(TArray):
    """An order-M array of t-scalars.

    Parameters
    ----------
    data : array_like
        Array of shape ``I + dims``.
    scalar_ndim : int
        Number of leading t-scalar axes ``N``.  Required, since the split
        between t-scalar and tensor axes cannot be inferred.
    """

    __slots__ = ()

    def __init__(self, data, scalar_ndim, real=None):
        arr = np.asarray(data)
        if arr.ndim < int(scalar_ndim) + 1:
            raise ShapeError("a g-tensor needs at least one tensor mode")
        super().__init__(arr, scalar_ndim, real=real)

    @classmethod
    def zeros(cls, dims, scalar_shape):
        scalar_shape = tuple(scalar_shape)
        return cls(np.zeros(scalar_shape + tuple(dims)), len(scalar_shape))

    @classmethod
    def from_tmatrix(cls, m):
        return cls._make(m.data, m.scalar_ndim, m.is_real, m._spectrum)

    @property
    def dims(self):
        return self.entry_shape

    @property
    def order(self):
        return len(self.dims)

    def __getitem__(self, key):
        key = key if isinstance(key, tuple) else (key,)
        cls = TScalar
        if not (len(key) == self.order and all(isinstance(k, numbers.Integral) for k in key)):
            cls = GTensor
            key = tuple(slice(k, k + 1 or None) if isinstance(k, numbers.Integral) else k for k in key)
        key = (slice(None),) * self.scalar_ndim + key
        spec = None if self._spectrum is None else self._spectrum[key]
        return cls._make(self.data[key], self.scalar_ndim, self.is_real, spec)

    def flatten(self, k):
        return gt_flatten(self, k)

    def mode_mul(self, k, y):
        return gt_mode_mul(self, k, y)

    def to_tmatrix(self):
        """View an order-2 g-tensor as a t-matrix."""
        if self.order != 2:
            raise ShapeError(f"only order-2 g-tensors are t-matrices, got order {self.order}")
        return TMatrix._make(self.data, self.scalar_ndim, self.is_real, self._spectrum)


def _check_mode(x, k):
    if not isinstance(k, numbers.Integral) or not 0 <= k < x.order:
        raise ShapeError(f"mode {k} out of range for an order-{x.order} g-tensor")
    return int(k)


def _flat_perm(nd, order, k):
    # mode k first, then the remaining modes in descending order so that a
    # C-order reshape makes the earliest remaining mode vary fastest
    rest = [m for m in range(order) if m != k][::-1]
    return list(range(nd)) + [nd + k] + [nd + m for m in rest]


def gt_flatten(x, k):
    """Mode-k flattening, a ``D_k x prod(D)/D_k`` t-matrix."""
    k = _check_mode(x, k)
    nd = x.scalar_ndim
    perm = _flat_perm(nd, x.order, k)
    data = np.transpose(x.data, perm).reshape(x.scalar_shape + (x.dims[k], -1))
    spec = None
    if x._spectrum is not None:
        spec = np.transpose(x._spectrum, perm).reshape(data.shape)
    return TMatrix._make(data, nd, x.is_real, spec)


def _unflatten_array(arr, nd, k, dims):
    order = len(dims)
    perm = _flat_perm(nd, order, k)
    permuted = [dims[p - nd] for p in perm[nd:]]
    arr = arr.reshape(arr.shape[:nd] + tuple(permuted))
    return np.transpose(arr, np.argsort(perm))


def gt_unflatten(m, k, dims):
    """Inverse of :func:`gt_flatten` for a g-tensor of dimensions ``dims``."""
    dims = tuple(int(d) for d in dims)
    if not 0 <= k < len(dims):
        raise ShapeError(f"mode {k} out of range for dims {dims}")
    if m.rows != dims[k] or m.rows * m.cols != int(np.prod(dims)):
        raise ShapeError(f"t-matrix of shape {m.shape} cannot unflatten to dims {dims} at mode {k}")
    nd = m.scalar_ndim
    data = _unflatten_array(m.data, nd, k, dims)
    spec = None if m._spectrum is None else _unflatten_array(m._spectrum, nd, k, dims)
    return GTensor._make(data, nd, m.is_real, spec)


def gt_mode_mul(x, k, y):
    """Mode-k product ``x o_k y``; ``D_k`` is replaced by ``y.rows``."""
    k = _check_mode(x, k)
    if not isinstance(y, TMatrix):
        raise ShapeError("mode multiplication needs a TMatrix")
    if y.cols != x.dims[k]:
        raise ShapeError(f"t-matrix has {y.cols} columns but mode {k} has dimension {x.dims[k]}")
    prod = tm_mul(y, gt_flatten(x, k))
    dims = x.dims[:k] + (y.rows,) + x.dims[k + 1:]
    return gt_unflatten(prod, k, dims)
