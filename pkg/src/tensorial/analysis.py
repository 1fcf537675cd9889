"""Component analysis over t-scalar data: TPCA, T2DPCA and TGCA.

TPCA works on t-vectors (``D x 1`` t-matrices), T2DPCA on ``D1 x D2``
t-matrices and TGCA on ``D x d`` t-matrices whose column spans are compared
as points of a Grassmannian.  TPCA is T2DPCA with ``D2 = 1`` and both share a
single covariance routine, so they agree exactly on that case.

A feature vector keeps the leading components; with a basis from
:func:`~tensorial.decomp.tsvd` these carry the largest singular values on
every Fourier slice.  Taking ``d <= K - 1`` components is advisable, since
``K`` samples span at most ``K - 1`` directions around their mean.
"""

from dataclasses import dataclass

import numpy as np

from ._base import TArray
from .decomp import gram_schmidt, tsvd
from .errors import ModelError, ShapeError
from .tmatrix import TMatrix
from .tscalar import DEFAULT_TOL

#: Relative threshold for the strict positivity of the TGCA Gram spectrum.
POSITIVITY_TOL = 1e-10


def _check_samples(samples, min_count):
    samples = list(samples)
    if len(samples) < min_count:
        raise ModelError(f"need at least {min_count} samples, got {len(samples)}")
    first = samples[0]
    for s in samples:
        if not isinstance(s, TMatrix):
            raise ShapeError("samples must be TMatrix instances")
        if s.scalar_shape != first.scalar_shape or s.shape != first.shape:
            raise ShapeError("samples must share t-scalar shape and dimensions")
    return samples


def _mean_and_covariance(samples):
    """Sample mean and ``sum (X - M)(X - M)^H / (K - 1)``, per Fourier slice.

    Accumulates one outer product at a time so memory stays at ``D1^2``
    t-scalars however many samples there are.
    """
    k = len(samples)
    nd = samples[0].scalar_ndim
    real = all(s.is_real for s in samples)
    mean_spec = sum(s.spectrum for s in samples) / k
    rows = samples[0].rows
    cov = np.zeros(samples[0].scalar_shape + (rows, rows), dtype=np.complex128)
    for s in samples:
        c = s.spectrum - mean_spec
        cov += c @ np.conj(np.swapaxes(c, -1, -2))
    cov /= k - 1
    cov = 0.5 * (cov + np.conj(np.swapaxes(cov, -1, -2)))
    mean = TMatrix.from_spectrum(mean_spec, nd, real=real)
    return mean, TMatrix.from_spectrum(cov, nd, real=real)


@dataclass(frozen=True)
class T2DPCAModel:
    """Fitted T2DPCA: mean ``D1 x D2``, orthonormal basis ``D1 x D1``."""

    mean: TMatrix
    basis: TMatrix
    covariance: TMatrix

    @property
    def dim(self):
        return self.basis.rows

    def transform(self, y, d):
        """Leading ``d`` rows of ``U^H o (y - mean)``."""
        if not isinstance(y, TMatrix) or y.shape != self.mean.shape or y.scalar_shape != self.mean.scalar_shape:
            raise ShapeError("query does not match the fitted sample shape")
        if not 1 <= d <= self.dim:
            raise ShapeError(f"d must be in 1..{self.dim}, got {d}")
        return self.basis[:, :d].H @ (y - self.mean)

    def reconstruct(self, feat):
        """``U[:, :d] o feat + mean`` where ``d`` is the number of feature rows."""
        d = feat.rows
        if not 1 <= d <= self.dim or feat.cols != self.mean.cols:
            raise ShapeError(f"feature of shape {feat.shape} does not fit this model")
        return self.basis[:, :d] @ feat + self.mean


class TPCAModel(T2DPCAModel):
    """Fitted TPCA: mean t-vector and orthonormal ``D x D`` basis."""


def t2dpca_fit(samples):
    """Fit T2DPCA to ``K >= 2`` t-matrices of equal shape."""
    samples = _check_samples(samples, 2)
    mean, cov = _mean_and_covariance(samples)
    return T2DPCAModel(mean=mean, basis=tsvd(cov).U, covariance=cov)


def tpca_fit(samples):
    """Fit TPCA to ``K >= 2`` t-vectors (``D x 1`` t-matrices)."""
    samples = _check_samples(samples, 2)
    if samples[0].cols != 1:
        raise ShapeError("TPCA samples must be t-vectors (one column)")
    mean, cov = _mean_and_covariance(samples)
    return TPCAModel(mean=mean, basis=tsvd(cov).U, covariance=cov)


def t2dpca_transform(m, y, d):
    return m.transform(y, d)


def t2dpca_reconstruct(m, feat):
    return m.reconstruct(feat)


tpca_transform = t2dpca_transform
tpca_reconstruct = t2dpca_reconstruct


def _projector_spectra(orthobases):
    # per slice P_k = Q_k Q_k^H, shape (K,) + I + (D, D)
    return np.stack([q.spectrum @ np.conj(np.swapaxes(q.spectrum, -1, -2)) for q in orthobases])


def _kernel(proj_a, proj_b):
    """``||A^H B||_F^2 = tr(P_A P_B)`` per slice, for every pair of projectors."""
    return np.einsum("k...ab,l...ab->...kl", proj_a, np.conj(proj_b)).real


@dataclass(frozen=True)
class TGCAModel:
    """Fitted TGCA.

    ``gram[k, l]`` is ``||X_k^H o X_l||_F^2`` for the orthonormalized samples
    and ``gram = U o S o U^H``.
    """

    orthobases: tuple
    gram: TMatrix
    U: TMatrix
    S: TMatrix
    S_half: TMatrix
    S_half_inv: TMatrix
    tol: float = DEFAULT_TOL

    @property
    def num_samples(self):
        return self.gram.rows

    def features_observed(self, k_prime=None):
        """Feature t-vectors of the training samples, the columns of ``S^1/2 o U^H``."""
        k_prime = self._check_k(k_prime)
        full = self.S_half @ self.U.H
        return [full[:k_prime, k] for k in range(self.num_samples)]

    def kernel_vector(self, y):
        """``(K_TV)_k = ||Y^H o X_k||_F^2`` for the orthonormalized query ``Y``."""
        first = self.orthobases[0]
        if not isinstance(y, TMatrix) or y.shape != first.shape or y.scalar_shape != first.scalar_shape:
            raise ShapeError("query does not match the fitted sample shape")
        q = gram_schmidt(y, self.tol)
        pk = _projector_spectra(self.orthobases)
        kern = _kernel(pk, _projector_spectra([q]))[..., 0]
        return TMatrix.from_spectrum(kern[..., None], y.scalar_ndim, real=self.gram.is_real and y.is_real)

    def features_query(self, y, k_prime=None):
        """``S^-1/2 o U^H o K_TV``, keeping the leading ``k_prime`` entries."""
        k_prime = self._check_k(k_prime)
        feat = self.S_half_inv @ self.U.H @ self.kernel_vector(y)
        return feat[:k_prime, :]

    def _check_k(self, k_prime):
        k = self.num_samples
        if k_prime is None:
            return k
        if not 1 <= k_prime <= k:
            raise ShapeError(f"K' must be in 1..{k}, got {k_prime}")
        return int(k_prime)


def tgca_fit(samples, tol=DEFAULT_TOL):
    """Fit TGCA to ``K >= 1`` t-matrices of shape ``D x d`` with ``D > d``.

    Raises
    ------
    ModelError
        If some diagonal t-scalar of ``S`` is not strictly positive on every
        Fourier slice (relative to :data:`POSITIVITY_TOL` times the largest
        slice value).
    OrthogonalizationError
        If a sample cannot be orthonormalized.
    """
    samples = _check_samples(samples, 1)
    rows, cols = samples[0].shape
    if rows <= cols:
        raise ShapeError(f"TGCA needs D > d, got {rows} x {cols}")
    orthobases = tuple(gram_schmidt(s, tol) for s in samples)
    nd = samples[0].scalar_ndim
    real = all(s.is_real for s in samples)
    proj = _projector_spectra(orthobases)
    g = _kernel(proj, proj)
    g = 0.5 * (g + np.swapaxes(g, -1, -2))
    gram = TMatrix.from_spectrum(g, nd, real=real)
    f = tsvd(gram)
    lam = np.diagonal(f.S.spectrum, axis1=-2, axis2=-1).real
    top = lam.max() if lam.size else 0.0
    low = lam.reshape(-1, lam.shape[-1]).min(axis=0)
    if top <= 0 or np.any(low <= POSITIVITY_TOL * top):
        k = int(np.argmax(low <= POSITIVITY_TOL * top)) if top > 0 else 0
        raise ModelError(
            f"Gram singular value {k} is not strictly positive on every Fourier slice; "
            f"the samples are too few or too alike for TGCA"
        )
    root = np.sqrt(lam)
    eye = np.eye(lam.shape[-1])
    s_half = TMatrix.from_spectrum(root[..., None] * eye, nd, real=real)
    s_half_inv = TMatrix.from_spectrum((1.0 / root)[..., None] * eye, nd, real=real)
    return TGCAModel(
        orthobases=orthobases, gram=gram, U=f.U, S=f.S, S_half=s_half, S_half_inv=s_half_inv, tol=tol
    )


def tgca_features_observed(m, k_prime=None):
    return m.features_observed(k_prime)


def tgca_features_query(m, y, k_prime=None):
    return m.features_query(y, k_prime)


def as_feature_array(feat):
    """Flatten a feature (t-vector or array) to a 1-D complex array."""
    if isinstance(feat, TArray):
        return np.asarray(feat.data).reshape(-1)
    return np.asarray(feat, dtype=np.complex128).reshape(-1)


def pooled_feature(feat):
    """Average each t-scalar entry of a feature t-vector to one complex number."""
    return np.mean(feat.data, axis=tuple(range(feat.scalar_ndim))).reshape(-1)


def nn_classify(train_feats, train_labels, query_feat):
    """Label of the nearest training feature in Euclidean distance.

    t-vector features are compared as flat complex arrays.  On ties the
    training sample with the lowest index wins.
    """
    train = [as_feature_array(f) for f in train_feats]
    if not train:
        raise ModelError("nearest-neighbour classification needs a nonempty training set")
    if len(train) != len(train_labels):
        raise ShapeError("need one label per training feature")
    q = as_feature_array(query_feat)
    dist = [float(np.linalg.norm(t - q)) if t.shape == q.shape else np.nan for t in train]
    if np.any(np.isnan(dist)):
        raise ShapeError("training and query features differ in size")
    return train_labels[int(np.argmin(dist))]


def nn_classify_batch(train_feats, train_labels, query_feats):
    """Vectorized :func:`nn_classify` over many queries."""
    train = np.stack([as_feature_array(f) for f in train_feats])
    queries = np.stack([as_feature_array(f) for f in query_feats])
    if train.shape[0] != len(train_labels):
        raise ShapeError("need one label per training feature")
    if train.shape[1] != queries.shape[1]:
        raise ShapeError("training and query features differ in size")
    labels = np.asarray(train_labels)
    idx = [int(np.argmin(np.linalg.norm(train - q, axis=1))) for q in queries]
    return labels[idx]


__all__ = [
    "TPCAModel",
    "T2DPCAModel",
    "TGCAModel",
    "tpca_fit",
    "tpca_transform",
    "tpca_reconstruct",
    "t2dpca_fit",
    "t2dpca_transform",
    "t2dpca_reconstruct",
    "tgca_fit",
    "tgca_features_observed",
    "tgca_features_query",
    "nn_classify",
    "nn_classify_batch",
    "pooled_feature",
    "as_feature_array",
]
