"""Multidimensional Fourier transform over t-scalar shapes.

The forward transform uses the primitive roots ``exp(+2*pi*1j/I_n)`` and no
scaling; the inverse carries the full ``1/(I_1*...*I_N)`` factor.  This is the
opposite sign convention from :func:`numpy.fft.fftn`, so the forward transform
is numpy's *inverse* FFT evaluated with ``norm="forward"`` (which drops the
scaling) and vice versa.

Slices of a spectrum are enumerated row-major over the multi-index, i.e. the
last t-scalar index varies fastest.  :class:`SpectralView` and the TDF file
format both use this order.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError

#: Imaginary residue (relative to the largest modulus) tolerated when an
#: inverse transform is expected to produce real entries.
REAL_TOL = 1e-10


def _check_shape(shape):
    shape = tuple(int(n) for n in shape)
    if len(shape) == 0 or any(n < 1 for n in shape):
        raise ShapeError(f"invalid t-scalar shape {shape}: need N >= 1 and every I_n >= 1")
    return shape


def dft_forward(x, ndim=None):
    """Forward transform over the leading ``ndim`` axes of ``x``.

    With ``ndim=None`` all axes are transformed, which is the t-scalar case.
    Trailing axes (matrix or tensor entries) are left alone.
    """
    x = np.asarray(x, dtype=np.complex128)
    ndim = x.ndim if ndim is None else ndim
    _check_shape(x.shape[:ndim])
    return np.fft.ifftn(x, axes=tuple(range(ndim)), norm="forward")


def dft_backward(x, ndim=None):
    """Inverse of :func:`dft_forward`, normalized by the number of entries."""
    x = np.asarray(x, dtype=np.complex128)
    ndim = x.ndim if ndim is None else ndim
    _check_shape(x.shape[:ndim])
    return np.fft.fftn(x, axes=tuple(range(ndim)), norm="forward")


def fourier_matrix(n):
    """The ``n x n`` matrix with entries ``exp(2*pi*1j*k1*k2/n)``."""
    k = np.arange(n)
    return np.exp(2j * np.pi * np.outer(k, k) / n)


def dft_direct(x, inverse=False):
    """Definitional O(n^2) transform of a single t-scalar array.

    Evaluates the defining sum entry by entry.  Far too slow for real work;
    it exists so the FFT path can be checked against something that shares
    no code with it.
    """
    x = np.asarray(x, dtype=np.complex128)
    shape = _check_shape(x.shape)
    sign = -1.0 if inverse else 1.0
    out = np.zeros(shape, dtype=np.complex128)
    idx = list(np.ndindex(*shape))
    for i in idx:
        acc = 0j
        for j in idx:
            phase = sum(ii * jj / n for ii, jj, n in zip(i, j, shape))
            acc += x[j] * np.exp(sign * 2j * np.pi * phase)
        out[i] = acc
    if inverse:
        out /= np.prod(shape)
    return out


def conjugate_partners(shape):
    """Flat index of the slice paired with each slice under ``i -> 2 - i``.

    A real array has a spectrum with ``F[p] == conj(F[partners[p]])``.
    Indices are flat and row-major over ``shape``.
    """
    shape = _check_shape(shape)
    grids = np.indices(shape).reshape(len(shape), -1)
    mirrored = (-grids) % np.asarray(shape)[:, None]
    return np.ravel_multi_index(tuple(mirrored), shape)


def realify(data, scale=None, tol=REAL_TOL):
    """Drop the imaginary part of ``data`` after checking it is negligible.

    Raises :class:`~tensorial.errors.DomainError` when the residue exceeds
    ``tol`` relative to ``scale`` (default: the largest modulus in ``data``).
    """
    data = np.asarray(data)
    if scale is None:
        scale = np.max(np.abs(data)) if data.size else 0.0
    residue = np.max(np.abs(data.imag)) if data.size else 0.0
    if residue > tol * max(scale, 1.0):
        raise DomainError(
            f"expected real entries but imaginary residue is {residue:.3e}"
        )
    return data.real.astype(np.complex128)


@dataclass(frozen=True)
class SpectralView:
    """Fourier-domain slices of a t-matrix or g-tensor.

    ``slices[p]`` is the complex matrix (or tensor) at flat multi-index ``p``,
    row-major over ``shape``.
    """

    shape: tuple
    slices: np.ndarray

    def __post_init__(self):
        shape = _check_shape(self.shape)
        slices = np.asarray(self.slices, dtype=np.complex128)
        if slices.ndim < 1 or slices.shape[0] != int(np.prod(shape)):
            raise ShapeError(
                f"expected {int(np.prod(shape))} slices for shape {shape}, "
                f"got array of shape {slices.shape}"
            )
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "slices", slices)

    @classmethod
    def from_slices(cls, shape, slices):
        """Build a view from a sequence of equally sized complex matrices."""
        mats = [np.asarray(s, dtype=np.complex128) for s in slices]
        dims = {m.shape for m in mats}
        if len(dims) != 1:
            raise ShapeError(f"inconsistent slice dimensions: {sorted(dims)}")
        return cls(tuple(shape), np.stack(mats))

    @property
    def num_slices(self):
        return self.slices.shape[0]

    @property
    def entry_shape(self):
        return self.slices.shape[1:]

    def __getitem__(self, index):
        if isinstance(index, tuple):
            index = np.ravel_multi_index(index, self.shape)
        return self.slices[index]

    def spectrum(self):
        """The spectrum as an array of shape ``shape + entry_shape``."""
        return self.slices.reshape(self.shape + self.entry_shape)


def to_spectral(obj):
    """Fourier-domain view of a :class:`TMatrix` or :class:`GTensor`."""
    shape = obj.scalar_shape
    spec = obj.spectrum
    return SpectralView(shape, spec.reshape((-1,) + spec.shape[len(shape):]))


def from_spectral(view, real=None, cls=None):
    """Inverse of :func:`to_spectral`.

    Two-dimensional slices give a :class:`TMatrix`, anything else a
    :class:`GTensor`; pass ``cls`` to override.  With ``real=None`` the result
    is flagged real when the slices are conjugate-symmetric to within
    :data:`REAL_TOL`.
    """
    from .gtensor import GTensor
    from .tmatrix import TMatrix

    if cls is None:
        cls = TMatrix if len(view.entry_shape) == 2 else GTensor
    spec = view.spectrum()
    if real is None:
        partners = conjugate_partners(view.shape)
        asym = np.max(np.abs(view.slices - view.slices[partners].conj()))
        scale = np.max(np.abs(view.slices)) if view.slices.size else 0.0
        real = bool(asym <= REAL_TOL * max(scale, 1.0))
    return cls.from_spectrum(spec, len(view.shape), real=real)
