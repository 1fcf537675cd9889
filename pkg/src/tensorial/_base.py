"""Storage shared by t-scalars, t-matrices and g-tensors.

Every object is an immutable complex array whose leading axes index the
t-scalar entries and whose trailing axes index matrix or tensor positions,
i.e. the ``C^{I_1 x ... x I_N x D_1 x ... x D_M}`` layout.  The spectrum is
computed once on first use and cached.
"""

import numbers

import numpy as np

from .errors import ShapeError
from .spectral import _check_shape, dft_backward, dft_forward, realify


class TArray:
    __slots__ = ("_data", "_scalar_ndim", "_spectrum", "_real")

    def __init__(self, data, scalar_ndim, real=None):
        arr = np.asarray(data)
        if arr.dtype == object:
            raise ShapeError("ragged or object input is not supported")
        cdata = np.array(arr, dtype=np.complex128)
        scalar_ndim = int(scalar_ndim)
        if not 1 <= scalar_ndim <= cdata.ndim:
            raise ShapeError(f"scalar_ndim={scalar_ndim} invalid for array of ndim {cdata.ndim}")
        _check_shape(cdata.shape[:scalar_ndim])
        if real is None:
            real = not np.iscomplexobj(arr) or not np.any(cdata.imag)
        elif real:
            cdata = realify(cdata)
        self._set(cdata, scalar_ndim, bool(real), None)

    def _set(self, data, scalar_ndim, real, spectrum):
        data.flags.writeable = False
        if spectrum is not None:
            spectrum.flags.writeable = False
        self._data = data
        self._scalar_ndim = scalar_ndim
        self._real = real
        self._spectrum = spectrum

    @classmethod
    def _make(cls, data, scalar_ndim, real, spectrum=None):
        obj = cls.__new__(cls)
        if spectrum is not None:
            spectrum = np.asarray(spectrum, dtype=np.complex128)
        TArray._set(obj, np.asarray(data, dtype=np.complex128), scalar_ndim, real, spectrum)
        return obj

    @classmethod
    def from_spectrum(cls, spectrum, scalar_ndim, real=False):
        """Build from a Fourier-domain array, checking realness if requested."""
        spectrum = np.array(spectrum, dtype=np.complex128)
        data = dft_backward(spectrum, scalar_ndim)
        if real:
            data = realify(data)
        return cls._make(data, scalar_ndim, bool(real), spectrum)

    def _like(self, data, real):
        return type(self)._make(data, self._scalar_ndim, real)

    def _like_spectrum(self, spectrum, real):
        return type(self).from_spectrum(spectrum, self._scalar_ndim, real=real)

    @property
    def data(self):
        """Spatial-domain array (read-only), t-scalar axes first."""
        return self._data

    @property
    def spectrum(self):
        """Fourier-domain array (read-only), same layout as :attr:`data`."""
        if self._spectrum is None:
            spec = dft_forward(self._data, self._scalar_ndim)
            spec.flags.writeable = False
            self._spectrum = spec
        return self._spectrum

    @property
    def scalar_shape(self):
        return self._data.shape[: self._scalar_ndim]

    @property
    def scalar_ndim(self):
        return self._scalar_ndim

    @property
    def entry_shape(self):
        return self._data.shape[self._scalar_ndim:]

    @property
    def num_slices(self):
        return int(np.prod(self.scalar_shape))

    @property
    def is_real(self):
        """True when every entry is known to be real."""
        return self._real

    def _check_same(self, other, op):
        if type(other) is not type(self):
            raise ShapeError(f"cannot {op} {type(self).__name__} and {type(other).__name__}")
        if other._data.shape != self._data.shape or other._scalar_ndim != self._scalar_ndim:
            raise ShapeError(
                f"cannot {op} shapes {self.scalar_shape}|{self.entry_shape} "
                f"and {other.scalar_shape}|{other.entry_shape}"
            )

    def __add__(self, other):
        if not isinstance(other, TArray):
            return NotImplemented
        self._check_same(other, "add")
        return self._like(self._data + other._data, self._real and other._real)

    def __sub__(self, other):
        if not isinstance(other, TArray):
            return NotImplemented
        self._check_same(other, "subtract")
        return self._like(self._data - other._data, self._real and other._real)

    def __neg__(self):
        return self._like(-self._data, self._real)

    def scale(self, lam):
        """Multiply every entry by the complex number ``lam``."""
        lam = complex(lam)
        return self._like(self._data * lam, self._real and lam.imag == 0)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    __array_ufunc__ = None

    def real_data(self):
        """Entries as a float array; raises if they are not real."""
        return realify(self._data).real

    def __repr__(self):
        tag = "real" if self._real else "complex"
        return (
            f"{type(self).__name__}(scalar_shape={self.scalar_shape}, "
            f"entries={self.entry_shape}, {tag})"
        )
