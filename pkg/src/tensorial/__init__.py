"""Linear algebra over t-scalars.

A t-scalar is a fixed-shape complex array multiplied by circular
convolution.  This package provides t-scalars, t-matrices and g-tensors over
that ring, their decompositions (TSVD, THOSVD, Gram-Schmidt) and component
analyzers (TPCA, T2DPCA, TGCA).  Everything heavy runs slice by slice in the
Fourier domain.
"""

from .analysis import (
    T2DPCAModel,
    TGCAModel,
    TPCAModel,
    nn_classify,
    nn_classify_batch,
    pooled_feature,
    t2dpca_fit,
    t2dpca_reconstruct,
    t2dpca_transform,
    tgca_features_observed,
    tgca_features_query,
    tgca_fit,
    tpca_fit,
    tpca_reconstruct,
    tpca_transform,
)
from .decomp import THOSVDFactors, TSVDFactors, gram_schmidt, thosvd, thosvd_truncate, tsvd, tsvd_truncate
from .errors import (
    DataError,
    DecompositionError,
    DomainError,
    ModelError,
    OrthogonalizationError,
    ShapeError,
    SingularElementError,
    TensorialError,
    UsageError,
)
from .gtensor import GTensor, gt_flatten, gt_mode_mul, gt_unflatten
from .spectral import SpectralView, dft_backward, dft_forward, from_spectral, to_spectral
from .tmatrix import (
    TMatrix,
    hstack,
    tm_add,
    tm_conj_transpose,
    tm_fro_norm,
    tm_mul,
    tm_pool,
    tm_rank,
    tm_scalar_mul,
    tm_slice,
    tm_tscalar_mul,
    tv_dot,
    tvector,
)
from .tscalar import (
    RingConstants,
    TScalar,
    abs_t,
    angle_t,
    conj,
    im_part,
    inverse,
    is_invertible,
    is_nonnegative,
    is_self_conjugate,
    le_nonneg,
    min_nonneg,
    pool,
    rank_t,
    re_part,
    sqrt_nonneg,
)

__version__ = "0.1.0"
