"""TSVD, THOSVD and generalized Gram-Schmidt.

All three work one Fourier slice at a time: a t-matrix is transformed, each
slice is decomposed as an ordinary complex matrix, and the per-slice factors
are transformed back.

For real input the factors are made real by construction.  Slices ``p`` and
its conjugate partner ``-p`` are conjugates of each other, so only one of each
pair is decomposed and the partner receives the conjugated factors.  Slices
that are their own partner are real matrices and get a real SVD.

Phase convention: within every slice, each left singular vector is rotated
so that its largest-modulus entry is real and nonnegative (ties go to the
first such entry); the matching right singular vector gets the same rotation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DecompositionError, OrthogonalizationError, ShapeError
from .gtensor import GTensor, gt_flatten, gt_mode_mul
from .spectral import conjugate_partners
from .tmatrix import TMatrix
from .tscalar import DEFAULT_TOL


def _fix_phase(u, v):
    """Rotate columns of ``u`` (and ``v`` alike) so each pivot entry is >= 0."""
    piv = np.argmax(np.abs(u), axis=-2)
    top = np.take_along_axis(u, piv[..., None, :], axis=-2)
    mod = np.abs(top)
    rot = np.where(mod > 0, np.conj(top) / np.where(mod > 0, mod, 1.0), 1.0)
    return u * rot, v * rot


def _svd_slices(mats, scalar_shape, real):
    """SVD of a stack ``(P, D1, D2)`` of slices, honouring conjugate pairing."""
    p_count = mats.shape[0]
    bad = ~np.isfinite(mats).all(axis=(-2, -1))
    if np.any(bad):
        p = int(np.argmax(bad))
        raise DecompositionError(
            f"slice {np.unravel_index(p, scalar_shape)} has non-finite entries",
            tuple(int(i) for i in np.unravel_index(p, scalar_shape)),
        )
    if real:
        partners = conjugate_partners(scalar_shape)
        reps = np.flatnonzero(np.arange(p_count) <= partners)
    else:
        partners = None
        reps = np.arange(p_count)

    q = min(mats.shape[-2:])
    u = np.empty(mats.shape[:-1] + (q,), dtype=np.complex128)
    s = np.empty((p_count, q))
    vh = np.empty((p_count, q, mats.shape[-1]), dtype=np.complex128)
    for p in reps:
        a = mats[p]
        if real and partners[p] == p:
            a = a.real
        try:
            up, sp, vhp = np.linalg.svd(a, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            idx = tuple(int(i) for i in np.unravel_index(p, scalar_shape))
            raise DecompositionError(f"SVD did not converge on slice {idx}", idx) from exc
        up, vp = _fix_phase(up, np.conj(vhp).T)
        u[p], s[p], vh[p] = up, sp, np.conj(vp).T
        if real and partners[p] != p:
            u[partners[p]], s[partners[p]], vh[partners[p]] = np.conj(u[p]), sp, np.conj(vh[p])
    return u, s, np.conj(np.swapaxes(vh, -1, -2))


@dataclass(frozen=True)
class TSVDFactors:
    """``X = U o S o V^H`` with ``S`` diagonal.

    Full factors are kept so that any number of truncation ranks can be
    evaluated without decomposing again.
    """

    U: TMatrix
    S: TMatrix
    V: TMatrix

    @property
    def rank_bound(self):
        """``Q = min(D1, D2)``."""
        return self.S.rows

    @property
    def singular_spectra(self):
        """Per-slice singular values, shape ``(prod(I), Q)``, descending per row."""
        return np.diagonal(self.S.slice_matrices(), axis1=-2, axis2=-1).real

    def singular_value(self, k):
        """The k-th diagonal t-scalar of ``S`` (zero-based)."""
        return self.S[k, k]

    def reconstruct(self):
        return tsvd_truncate(self, self.rank_bound)

    def truncate(self, r):
        return tsvd_truncate(self, r)


def tsvd(x):
    """TSVD of a t-matrix.

    Returns
    -------
    TSVDFactors
        ``U`` is ``D1 x Q``, ``S`` is ``Q x Q`` and ``V`` is ``D2 x Q`` with
        ``Q = min(D1, D2)``.  Real input gives real factors.

    Raises
    ------
    DecompositionError
        If a slice SVD fails; ``slice_index`` names the Fourier multi-index.
    """
    if not isinstance(x, TMatrix):
        raise ShapeError("tsvd needs a TMatrix")
    shape, nd = x.scalar_shape, x.scalar_ndim
    u, s, v = _svd_slices(x.slice_matrices(), shape, x.is_real)
    q = s.shape[-1]
    s_mat = np.zeros((s.shape[0], q, q), dtype=np.complex128)
    s_mat[:, np.arange(q), np.arange(q)] = s
    real = x.is_real
    return TSVDFactors(
        U=TMatrix.from_spectrum(u.reshape(shape + u.shape[1:]), nd, real=real),
        S=TMatrix.from_spectrum(s_mat.reshape(shape + (q, q)), nd, real=real),
        V=TMatrix.from_spectrum(v.reshape(shape + v.shape[1:]), nd, real=real),
    )


def tsvd_truncate(f, r):
    """Rank-``r`` approximation ``U[:, :r] o S[:r, :r] o V[:, :r]^H``."""
    q = f.rank_bound
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= q:
        raise ShapeError(f"truncation rank must be in 1..{q}, got {r}")
    u = f.U.spectrum[..., :r]
    s = np.diagonal(f.S.spectrum, axis1=-2, axis2=-1)[..., :r]
    v = f.V.spectrum[..., :r]
    spec = np.matmul(u * s[..., None, :], np.conj(np.swapaxes(v, -1, -2)))
    return TMatrix.from_spectrum(spec, f.U.scalar_ndim, real=f.U.is_real)


@dataclass(frozen=True)
class THOSVDFactors:
    """``X = S x_1 U_1 x_2 ... x_M U_M`` with core ``S`` and orthonormal ``U_k``."""

    core: GTensor
    factors: tuple

    def reconstruct(self):
        return thosvd_truncate(self, self.core.dims)

    def truncate(self, ranks):
        return thosvd_truncate(self, ranks)


def thosvd(x):
    """THOSVD of a g-tensor.

    ``U_k`` is the left TSVD factor of the mode-k flattening and the core is
    ``x x_1 U_1^H ... x_M U_M^H``.
    """
    if not isinstance(x, GTensor):
        raise ShapeError("thosvd needs a GTensor")
    factors = tuple(tsvd(gt_flatten(x, k)).U for k in range(x.order))
    core = x
    for k, u in enumerate(factors):
        core = gt_mode_mul(core, k, u.H)
    return THOSVDFactors(core=core, factors=factors)


def thosvd_truncate(f, ranks):
    """Multilinear rank-``ranks`` approximation from THOSVD factors."""
    ranks = tuple(ranks)
    dims = f.core.dims
    if len(ranks) != len(dims):
        raise ShapeError(f"need {len(dims)} ranks, got {len(ranks)}")
    for k, (r, q) in enumerate(zip(ranks, dims)):
        if not isinstance(r, (int, np.integer)) or not 1 <= r <= q:
            raise ShapeError(f"rank for mode {k} must be in 1..{q}, got {r}")
    out = f.core[tuple(slice(0, r) for r in ranks)]
    for k, (u, r) in enumerate(zip(f.factors, ranks)):
        out = gt_mode_mul(out, k, u[:, :r])
    return out


def gram_schmidt(y, tol=DEFAULT_TOL):
    """Orthonormalize the columns of a ``D x d`` t-matrix.

    Modified Gram-Schmidt, run slice by slice on the spectrum.  Each column
    has its projections onto the previous (already normalized) columns
    removed one at a time and is then divided by its generalized norm.

    Raises
    ------
    OrthogonalizationError
        When a column's norm t-scalar is not invertible, i.e. it vanishes on
        some Fourier slice relative to ``tol`` times the largest slice norm of
        the original column.
    """
    if not isinstance(y, TMatrix):
        raise ShapeError("gram_schmidt needs a TMatrix")
    rows, cols = y.shape
    if rows < cols:
        raise ShapeError(f"cannot orthonormalize {cols} columns of length {rows}")
    spec = np.array(y.spectrum)
    out = np.empty_like(spec)
    for k in range(cols):
        v = spec[..., k]
        ref = np.sqrt(np.sum(np.abs(v) ** 2, axis=-1)).max()
        for j in range(k):
            coef = np.sum(np.conj(out[..., j]) * v, axis=-1)
            v = v - coef[..., None] * out[..., j]
        norm = np.sqrt(np.sum(np.abs(v) ** 2, axis=-1))
        bad = norm <= tol * ref if ref > 0 else np.ones(norm.shape, dtype=bool)
        if np.any(bad):
            idx = tuple(int(i) for i in np.argwhere(bad)[0])
            raise OrthogonalizationError(
                f"column {k} has a vanishing norm on Fourier slice {idx}", column=k, fourier_index=idx
            )
        out[..., k] = v / norm[..., None]
    return TMatrix.from_spectrum(out, y.scalar_ndim, real=y.is_real)

