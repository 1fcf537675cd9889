"""Matrices over the t-scalar ring.

A :class:`TMatrix` with ``D1`` rows and ``D2`` columns stores an array of shape
``I + (D1, D2)``.  Products, conjugate transposes, norms and ranks all reduce
to independent complex-matrix computations on the Fourier slices, one per
t-scalar multi-index, and are vectorized over those slices.

A t-vector is simply a t-matrix with one column; :func:`tvector` builds one.
Indices (rows, columns, slice multi-indices) are zero-based.
"""

import numbers

import numpy as np

from ._base import TArray
from .errors import ShapeError
from .spectral import _check_shape, conjugate_partners
from .tscalar import DEFAULT_TOL, TScalar, reverse_indices


class TMatrix(TArray):
    """A ``D1 x D2`` matrix of t-scalars.

    Parameters
    ----------
    data : array_like
        Array of shape ``I + (D1, D2)``.
    scalar_ndim : int, optional
        Number of leading t-scalar axes; defaults to ``data.ndim - 2``.
    """

    __slots__ = ()

    def __init__(self, data, scalar_ndim=None, real=None):
        arr = np.asarray(data)
        if arr.ndim < 3:
            raise ShapeError("t-matrix data needs t-scalar axes followed by two matrix axes")
        if scalar_ndim is None:
            scalar_ndim = arr.ndim - 2
        if arr.ndim != scalar_ndim + 2:
            raise ShapeError(f"expected {scalar_ndim + 2} axes, got {arr.ndim}")
        super().__init__(arr, scalar_ndim, real=real)

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols, scalar_shape):
        scalar_shape = _check_shape(scalar_shape)
        return cls._make(np.zeros(scalar_shape + (rows, cols)), len(scalar_shape), True)

    @classmethod
    def identity(cls, dim, scalar_shape):
        scalar_shape = _check_shape(scalar_shape)
        data = np.zeros(scalar_shape + (dim, dim))
        data[(0,) * len(scalar_shape)] = np.eye(dim)
        return cls._make(data, len(scalar_shape), True)

    @classmethod
    def from_entries(cls, rows):
        """Assemble from a nested list of :class:`TScalar` entries."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0] or len({len(r) for r in rows}) != 1:
            raise ShapeError("entries must form a non-empty rectangular grid")
        shapes = {e.shape for r in rows for e in r}
        if len(shapes) != 1:
            raise ShapeError(f"entries have differing t-scalar shapes: {sorted(shapes)}")
        (shape,) = shapes
        data = np.stack([np.stack([e.data for e in r], axis=-1) for r in rows], axis=-2)
        real = all(e.is_real for r in rows for e in r)
        return cls._make(data, len(shape), real)

    @classmethod
    def from_matrix(cls, mat):
        """Embed an ordinary complex matrix as a t-matrix with ``I = (1,)``."""
        mat = np.asarray(mat)
        if mat.ndim != 2:
            raise ShapeError("expected a 2-D matrix")
        return cls(mat[None], 1)

    @classmethod
    def diag(cls, entries):
        """Diagonal t-matrix with the given t-scalars on the diagonal."""
        entries = list(entries)
        shape = entries[0].shape
        q = len(entries)
        data = np.zeros(shape + (q, q), dtype=np.complex128)
        for k, e in enumerate(entries):
            data[..., k, k] = e.data
        return cls._make(data, len(shape), all(e.is_real for e in entries))

    # shape and indexing ---------------------------------------------------

    @property
    def rows(self):
        return self.data.shape[-2]

    @property
    def cols(self):
        return self.data.shape[-1]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        if not isinstance(key, tuple) or len(key) != 2:
            raise IndexError("index a t-matrix with [row, col]")
        r, c = key
        cls = TScalar
        if not (isinstance(r, numbers.Integral) and isinstance(c, numbers.Integral)):
            cls = TMatrix
            r = slice(r, r + 1 or None) if isinstance(r, numbers.Integral) else r
            c = slice(c, c + 1 or None) if isinstance(c, numbers.Integral) else c
        # entry selection commutes with the transform, so a cached spectrum carries over
        spec = None if self._spectrum is None else self._spectrum[..., r, c]
        return cls._make(self.data[..., r, c], self.scalar_ndim, self.is_real, spec)

    def column(self, k):
        return self[:, k]

    # algebra ---------------------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, TMatrix):
            return NotImplemented
        return tm_mul(self, other)

    def __mul__(self, other):
        if isinstance(other, TScalar):
            return tm_tscalar_mul(other, self)
        return super().__mul__(other)

    def __rmul__(self, other):
        if isinstance(other, TScalar):
            return tm_tscalar_mul(other, self)
        return super().__rmul__(other)

    @property
    def H(self):
        """Conjugate transpose."""
        return tm_conj_transpose(self)

    def slice(self, index):
        return tm_slice(self, index)

    def pool(self):
        return tm_pool(self)

    def fro_norm(self):
        return tm_fro_norm(self)

    def rank(self, tol=DEFAULT_TOL):
        return tm_rank(self, tol)

    def slice_matrices(self):
        """Fourier slices as an array of shape ``(prod(I), D1, D2)``."""
        return self.spectrum.reshape((-1,) + self.shape)


def tvector(data, scalar_ndim=None, real=None):
    """Build a one-column t-matrix from an array of shape ``I + (D,)``."""
    arr = np.asarray(data)
    return TMatrix(arr[..., None], scalar_ndim, real=real)


def hstack(mats):
    """Concatenate t-matrices with equal row counts side by side."""
    mats = list(mats)
    nd = mats[0].scalar_ndim
    if any(m.scalar_shape != mats[0].scalar_shape for m in mats):
        raise ShapeError("t-scalar shapes differ")
    data = np.concatenate([m.data for m in mats], axis=nd + 1)
    return TMatrix._make(data, nd, all(m.is_real for m in mats))


def _require(a, b, op):
    if not isinstance(a, TMatrix) or not isinstance(b, TMatrix):
        raise ShapeError(f"{op} needs TMatrix operands")
    if a.scalar_shape != b.scalar_shape:
        raise ShapeError(f"{op}: t-scalar shapes differ ({a.scalar_shape} vs {b.scalar_shape})")


def tm_add(a, b):
    _require(a, b, "add")
    return a + b


def tm_mul(a, b):
    """Ring matrix product, one complex matrix product per Fourier slice."""
    _require(a, b, "multiply")
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    spec = np.matmul(a.spectrum, b.spectrum)
    return TMatrix.from_spectrum(spec, a.scalar_ndim, real=a.is_real and b.is_real)


def tm_scalar_mul(lam, a):
    return a.scale(lam)


def tm_tscalar_mul(lam_t, a):
    """Multiply every entry of ``a`` by the t-scalar ``lam_t``."""
    if lam_t.shape != a.scalar_shape:
        raise ShapeError(f"t-scalar shape {lam_t.shape} does not match {a.scalar_shape}")
    spec = a.spectrum * lam_t.spectrum[..., None, None]
    return TMatrix.from_spectrum(spec, a.scalar_ndim, real=a.is_real and lam_t.is_real)


def tm_conj_transpose(a):
    data = np.conj(reverse_indices(a.data, a.scalar_ndim))
    spec = None
    if a._spectrum is not None:
        # slice-wise conjugate transpose in the Fourier domain
        spec = np.conj(np.swapaxes(a._spectrum, -1, -2))
    return TMatrix._make(np.swapaxes(data, -1, -2), a.scalar_ndim, a.is_real, spec)


def tv_dot(x, y):
    """Dot product ``sum_a conj(x_a) o y_a`` of two t-vectors."""
    _require(x, y, "dot")
    if x.cols != 1 or y.cols != 1 or x.rows != y.rows:
        raise ShapeError(f"dot needs t-vectors of equal length, got {x.shape} and {y.shape}")
    spec = np.sum(np.conj(x.spectrum[..., 0]) * y.spectrum[..., 0], axis=-1)
    return TScalar.from_spectrum(spec, x.scalar_ndim, real=x.is_real and y.is_real)


def tm_fro_norm(a):
    """Generalized Frobenius norm, a nonnegative t-scalar."""
    spec = np.sqrt(np.sum(np.abs(a.spectrum) ** 2, axis=(-2, -1)))
    return TScalar.from_spectrum(spec, a.scalar_ndim, real=a.is_real)


def tm_slice(a, index):
    """Spatial-domain complex matrix at the (zero-based) multi-index ``index``."""
    index = tuple(int(i) for i in np.atleast_1d(index))
    if len(index) != a.scalar_ndim or any(not 0 <= i < n for i, n in zip(index, a.scalar_shape)):
        raise IndexError(f"slice index {index} out of range for t-scalar shape {a.scalar_shape}")
    return np.array(a.data[index])


def tm_pool(a):
    """Average each t-scalar entry to a complex number."""
    return np.mean(a.data, axis=tuple(range(a.scalar_ndim)))


def tm_rank(a, tol=DEFAULT_TOL):
    """Generalized rank: spectrum entry ``i`` is the rank of Fourier slice ``i``.

    Singular values below ``tol * sigma_max * max(D1, D2)`` count as zero,
    with ``sigma_max`` taken over all slices.
    """
    sv = np.linalg.svd(a.slice_matrices(), compute_uv=False)
    if a.is_real:
        sv = 0.5 * (sv + sv[conjugate_partners(a.scalar_shape)])
    smax = float(sv.max()) if sv.size else 0.0
    thresh = tol * smax * max(a.shape)
    counts = np.sum(sv > thresh, axis=-1).astype(float) if smax > 0 else np.zeros(sv.shape[0])
    return TScalar.from_spectrum(counts.reshape(a.scalar_shape), a.scalar_ndim, real=a.is_real)
