"""Independent reference implementations used to check the library.

Nothing here imports :mod:`tensorial`; each routine follows the textbook
definition with plain loops or plain numpy linear algebra.
"""

import itertools

import numpy as np


def circular_convolution(x, y):
    """``D_i = sum_j X_{(i - j) mod I} Y_j`` by brute force."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    shape = x.shape
    out = np.zeros(shape, dtype=complex)
    for i in itertools.product(*map(range, shape)):
        acc = 0j
        for j in itertools.product(*map(range, shape)):
            k = tuple((a - b) % n for a, b, n in zip(i, j, shape))
            acc += x[k] * y[j]
        out[i] = acc
    return out


def dft_sum(x):
    """Forward transform of one t-scalar by the defining double sum, O(n^2)."""
    x = np.asarray(x, dtype=complex)
    shape = x.shape
    idx = list(itertools.product(*map(range, shape)))
    out = np.zeros(shape, dtype=complex)
    for i in idx:
        out[i] = sum(
            x[j] * np.exp(2j * np.pi * sum(a * b / n for a, b, n in zip(i, j, shape))) for j in idx
        )
    return out


def dft(x, ndim=None):
    """Forward transform as a product of Fourier matrices, one per mode.

    ``F(X) = X x_1 W_1 x_2 ... x_N W_N`` with ``W_n[a, b] = exp(2 pi i a b / I_n)``.
    """
    out = np.asarray(x, dtype=complex)
    ndim = out.ndim if ndim is None else ndim
    for ax in range(ndim):
        n = out.shape[ax]
        k = np.arange(n)
        w = np.exp(2j * np.pi * np.outer(k, k) / n)
        out = np.moveaxis(np.tensordot(w, out, axes=([1], [ax])), 0, ax)
    return out


def idft(x, ndim=None):
    out = np.asarray(x, dtype=complex)
    ndim = out.ndim if ndim is None else ndim
    n = int(np.prod(out.shape[:ndim]))
    return np.conj(dft(np.conj(out), ndim)) / n


def fix_phase(u):
    """Rotate each column so its largest-modulus entry is real and nonnegative."""
    u = np.array(u, dtype=complex)
    idx = np.argmax(np.abs(u), axis=0)
    piv = u[idx, np.arange(u.shape[1])]
    rot = np.where(np.abs(piv) > 0, np.conj(piv) / np.where(np.abs(piv) > 0, np.abs(piv), 1), 1)
    return u * rot


def slice_matrices(arr, ndim):
    """Fourier slices of an ``I + (D1, D2)`` array, shape ``(prod(I), D1, D2)``."""
    spec = dft(arr, ndim)
    return spec.reshape((-1,) + spec.shape[ndim:])


def slice_singular_values(arr, ndim):
    return np.stack([np.linalg.svd(m, compute_uv=False) for m in slice_matrices(arr, ndim)])


def best_rank_error(sv, r):
    """Eckart-Young optimum ``sqrt(sum_{k > r} sigma_k^2)`` for each row of ``sv``."""
    return np.sqrt(np.sum(sv[:, r:] ** 2, axis=1))


def eig_desc(h):
    """Eigenpairs of a Hermitian matrix, eigenvalues descending, phase-fixed vectors."""
    w, v = np.linalg.eigh(h)
    order = np.argsort(w)[::-1]
    return w[order], fix_phase(v[:, order])


def pca(samples):
    """Classical PCA on sample column vectors: mean, eigenvalues, basis."""
    x = np.stack([np.asarray(s, dtype=complex).ravel() for s in samples], axis=1)
    mean = x.mean(axis=1, keepdims=True)
    c = x - mean
    cov = c @ c.conj().T / (x.shape[1] - 1)
    w, v = eig_desc(cov)
    return mean, w, v


def pca_features(samples, mean, basis, d):
    x = np.stack([np.asarray(s, dtype=complex).ravel() for s in samples], axis=1)
    return basis[:, :d].conj().T @ (x - mean)


def twodpca(samples):
    """2DPCA with the row-direction scatter ``sum (A - M)(A - M)^H / (K - 1)``."""
    a = np.stack([np.asarray(s, dtype=complex) for s in samples])
    mean = a.mean(axis=0)
    g = sum((x - mean) @ (x - mean).conj().T for x in a) / (len(a) - 1)
    w, v = eig_desc(g)
    return mean, w, v


def classical_gram_schmidt(y):
    """Textbook (classical) Gram-Schmidt on the columns of a matrix."""
    y = np.asarray(y, dtype=complex)
    q = np.zeros_like(y)
    for k in range(y.shape[1]):
        v = y[:, k] - q[:, :k] @ (q[:, :k].conj().T @ y[:, k])
        q[:, k] = v / np.linalg.norm(v)
    return q


def gca(samples, queries=()):
    """Grassmann component analysis with the projection kernel.

    Orthonormal bases come from a QR factorization, the Gram matrix is
    ``||Q_k^H Q_l||_F^2`` and features are ``S^{1/2} U^H`` (observed) and
    ``S^{-1/2} U^H k`` (queries).
    """
    bases = [np.linalg.qr(np.asarray(s, dtype=complex))[0] for s in samples]
    k = len(bases)
    gram = np.array([[np.linalg.norm(bases[a].conj().T @ bases[b]) ** 2 for b in range(k)] for a in range(k)])
    w, u = eig_desc(gram)
    observed = np.diag(np.sqrt(w)) @ u.conj().T
    out = []
    for y in queries:
        qy = np.linalg.qr(np.asarray(y, dtype=complex))[0]
        kv = np.array([np.linalg.norm(qy.conj().T @ b) ** 2 for b in bases])
        out.append(np.diag(1 / np.sqrt(w)) @ u.conj().T @ kv)
    return gram, w, u, observed, out


def unfold(x, k):
    """Mode-k unfolding, remaining modes in ascending order, earliest fastest."""
    return np.reshape(np.moveaxis(x, k, 0), (x.shape[k], -1), order="F")


def fold(m, k, shape):
    rest = [shape[k]] + [n for i, n in enumerate(shape) if i != k]
    return np.moveaxis(np.reshape(m, rest, order="F"), 0, k)


def mode_product(x, k, m):
    shape = list(x.shape)
    shape[k] = m.shape[0]
    return fold(m @ unfold(x, k), k, shape)


def hosvd(x):
    """Classical HOSVD: factors from unfoldings, core by projection."""
    factors = [np.linalg.svd(unfold(x, k), full_matrices=False)[0] for k in range(x.ndim)]
    core = x
    for k, u in enumerate(factors):
        core = mode_product(core, k, u.conj().T)
    return core, factors


def hosvd_truncate(core, factors, ranks):
    out = core[tuple(slice(0, r) for r in ranks)]
    for k, (u, r) in enumerate(zip(factors, ranks)):
        out = mode_product(out, k, u[:, :r])
    return out
