"""The commutative ring of t-scalars under circular convolution.

A t-scalar is a complex array of fixed shape ``I = (I_1, ..., I_N)``.  Addition
is entrywise and multiplication is N-dimensional circular convolution.  The
Fourier transform of :mod:`tensorial.spectral` maps this ring isomorphically
onto the same arrays under the Hadamard product, so every product, inverse and
square root below is computed entrywise on the spectrum.

Predicates that compare spectra against zero take a relative tolerance
``tol`` (default :data:`DEFAULT_TOL`) scaled by the largest spectral modulus.
"""

import numbers
from dataclasses import dataclass

import numpy as np

from ._base import TArray
from .errors import DomainError, ShapeError, SingularElementError
from .spectral import _check_shape, conjugate_partners

DEFAULT_TOL = 1e-10


def reverse_indices(data, ndim):
    """Apply the index map ``i -> 2 - i`` (mod ``I_n``) on the leading axes."""
    out = data
    for ax in range(ndim):
        out = np.roll(np.flip(out, axis=ax), 1, axis=ax)
    return out


class TScalar(TArray):
    """An element of the ring ``(C, +, o)``.

    >>> x = TScalar([1, 2])
    >>> (x * TScalar([3, 4])).data.real
    array([11., 10.])
    """

    __slots__ = ()

    def __init__(self, data, real=None):
        arr = np.asarray(data)
        if arr.ndim == 0:
            raise ShapeError("a t-scalar needs at least one axis; use shape (1,) for a plain number")
        super().__init__(arr, arr.ndim, real=real)

    @property
    def shape(self):
        return self.scalar_shape

    @classmethod
    def zero(cls, shape):
        shape = _check_shape(shape)
        return cls._make(np.zeros(shape), len(shape), True)

    @classmethod
    def identity(cls, shape):
        shape = _check_shape(shape)
        data = np.zeros(shape)
        data[(0,) * len(shape)] = 1.0
        return cls._make(data, len(shape), True)

    @classmethod
    def from_number(cls, value, shape):
        """``value * E_T`` for the given shape."""
        return cls.identity(shape).scale(value)

    def __mul__(self, other):
        if isinstance(other, TScalar):
            return mul(self, other)
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral) or n < 0:
            return NotImplemented
        spec = self.spectrum ** int(n)
        return TScalar.from_spectrum(spec, self.scalar_ndim, real=self.is_real)

    def conj(self):
        return conj(self)


@dataclass(frozen=True)
class RingConstants:
    """Zero, identity and spectral identity for one t-scalar shape."""

    zero: TScalar
    identity: TScalar
    spectral_identity: TScalar

    @classmethod
    def for_shape(cls, shape):
        shape = _check_shape(shape)
        return cls(
            zero=TScalar.zero(shape),
            identity=TScalar.identity(shape),
            spectral_identity=TScalar._make(np.ones(shape), len(shape), True),
        )


def _check_pair(x, y):
    if not isinstance(x, TScalar) or not isinstance(y, TScalar):
        raise ShapeError("operands must be TScalar instances")
    if x.shape != y.shape:
        raise ShapeError(f"t-scalar shapes differ: {x.shape} vs {y.shape}")


def _scale_of(spec):
    return float(np.max(np.abs(spec))) if spec.size else 0.0


def add(x, y):
    _check_pair(x, y)
    return x + y


def mul(x, y):
    """Ring product (circular convolution), computed on the spectrum."""
    _check_pair(x, y)
    return TScalar.from_spectrum(x.spectrum * y.spectrum, x.scalar_ndim, real=x.is_real and y.is_real)


def scalar_mul(lam, x):
    return x.scale(lam)


def circular_convolution_direct(x, y):
    """Definitional circular convolution, used as an oracle for :func:`mul`.

    ``D_i = sum_j X_{i-j} Y_j`` with indices taken modulo the shape.
    """
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != y.shape:
        raise ShapeError(f"shapes differ: {x.shape} vs {y.shape}")
    shape = x.shape
    out = np.zeros(shape, dtype=np.complex128)
    idx = list(np.ndindex(*shape))
    for i in idx:
        acc = 0j
        for j in idx:
            k = tuple((a - b) % n for a, b, n in zip(i, j, shape))
            acc += x[k] * y[j]
        out[i] = acc
    return out


def conj(x):
    """Index-reversed complex conjugate; conjugates every spectral entry."""
    return TScalar._make(np.conj(reverse_indices(x.data, x.scalar_ndim)), x.scalar_ndim, x.is_real)


def re_part(x):
    return (x + conj(x)).scale(0.5)


def im_part(x):
    return (x - conj(x)).scale(1 / 2j)


def is_self_conjugate(x, tol=DEFAULT_TOL):
    spec = x.spectrum
    return bool(np.max(np.abs(spec.imag)) <= tol * (1.0 + _scale_of(spec)))


def is_nonnegative(x, tol=DEFAULT_TOL):
    spec = x.spectrum
    slack = tol * (1.0 + _scale_of(spec))
    return bool(np.max(np.abs(spec.imag)) <= slack and np.min(spec.real) >= -slack)


def _first_vanishing(spec, tol):
    mod = np.abs(spec)
    scale = _scale_of(spec)
    bad = mod <= tol * scale if scale > 0 else np.ones(spec.shape, dtype=bool)
    if np.any(bad):
        return tuple(int(k) for k in np.argwhere(bad)[0])
    return None


def is_invertible(x, tol=DEFAULT_TOL):
    return _first_vanishing(x.spectrum, tol) is None


def inverse(x, tol=DEFAULT_TOL):
    """Multiplicative inverse, the entrywise reciprocal of the spectrum."""
    spec = x.spectrum
    bad = _first_vanishing(spec, tol)
    if bad is not None:
        raise SingularElementError(f"t-scalar is not invertible: Fourier entry {bad} vanishes", bad)
    return TScalar.from_spectrum(1.0 / spec, x.scalar_ndim, real=x.is_real)


def sqrt_nonneg(x, tol=DEFAULT_TOL):
    """Arithmetic square root of a nonnegative t-scalar.

    Takes the nonnegative real root of every spectral entry.
    """
    if not is_nonnegative(x, tol):
        raise DomainError("square root needs a nonnegative t-scalar (real, nonnegative spectrum)")
    root = np.sqrt(np.clip(x.spectrum.real, 0.0, None))
    return TScalar.from_spectrum(root, x.scalar_ndim, real=x.is_real)


def abs_t(x):
    """Absolute t-value: the t-scalar with spectrum ``|F(x)|``."""
    return TScalar.from_spectrum(np.abs(x.spectrum), x.scalar_ndim, real=x.is_real)


def angle_t(x, tol=DEFAULT_TOL):
    """Generalized angle ``r(x)^-1 o x``; satisfies ``phi o conj(phi) = E_T``."""
    return mul(inverse(abs_t(x), tol), x)


def pool(x):
    """Mean of the entries of ``x`` as a complex number."""
    return complex(np.mean(x.data))


def rank_t(x, tol=DEFAULT_TOL):
    """Rank of a t-scalar: spectrum is 1 where ``F(x)`` is nonzero, else 0."""
    mod = np.abs(x.spectrum)
    if x.is_real:
        flat = mod.reshape(-1)
        mod = (0.5 * (flat + flat[conjugate_partners(x.shape)])).reshape(x.shape)
    scale = _scale_of(mod)
    ind = (mod > tol * scale).astype(float) if scale > 0 else np.zeros(x.shape)
    return TScalar.from_spectrum(ind, x.scalar_ndim, real=x.is_real)


def le_nonneg(x, y, tol=DEFAULT_TOL):
    """Partial order ``x <= y`` of nonnegative t-scalars, entrywise on spectra."""
    _check_pair(x, y)
    if not (is_nonnegative(x, tol) and is_nonnegative(y, tol)):
        raise DomainError("partial order is defined between nonnegative t-scalars only")
    fx, fy = x.spectrum.real, y.spectrum.real
    slack = tol * max(1.0, _scale_of(fx), _scale_of(fy))
    return bool(np.all(fx <= fy + slack))


def min_nonneg(x, y, tol=DEFAULT_TOL):
    """Infimum of two nonnegative t-scalars (entrywise spectral minimum)."""
    _check_pair(x, y)
    if not (is_nonnegative(x, tol) and is_nonnegative(y, tol)):
        raise DomainError("min is defined between nonnegative t-scalars only")
    spec = np.minimum(x.spectrum.real, y.spectrum.real)
    return TScalar.from_spectrum(spec, x.scalar_ndim, real=x.is_real and y.is_real)
