"""Tensorization of images and cubes, hyperpixel t-matrices and resizing."""

import numpy as np
from PIL import Image

from ..errors import ShapeError
from ..tmatrix import TMatrix


def _parse_window(window):
    w = tuple(int(n) for n in window)
    if len(w) != 2 or any(n < 1 or n % 2 == 0 for n in w):
        raise ShapeError(f"window must be two odd positive sizes, got {window}")
    return w


def tensorize_neighborhood(x, window=(3, 3)):
    """Replace every pixel by its zero-padded ``w1 x w2`` neighbourhood.

    Parameters
    ----------
    x : array_like
        Image ``(H, W)`` or cube ``(H, W, D)``.  Cubes are tensorized band by
        band over the two spatial axes.
    window : (int, int)
        Odd window sizes.

    Returns
    -------
    ndarray
        Shape ``window + x.shape``.  Entry ``[a, b, r, c]`` is
        ``x[r + a - c1, c + b - c2]`` (zero outside the image), where
        ``(c1, c2)`` is the window centre, so ``out[c1, c2]`` equals ``x``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim not in (2, 3):
        raise ShapeError(f"expected an image or a cube, got shape {x.shape}")
    w1, w2 = _parse_window(window)
    c1, c2 = w1 // 2, w2 // 2
    h, w = x.shape[:2]
    pad = [(c1, c1), (c2, c2)] + [(0, 0)] * (x.ndim - 2)
    xp = np.pad(x, pad)
    out = np.empty((w1, w2) + x.shape)
    for a in range(w1):
        for b in range(w2):
            out[a, b] = xp[a:a + h, b:b + w]
    return out


def central_slice(arr, window):
    """The ``window``-centre slice of a tensorized array (inverse of tensorizing)."""
    w1, w2 = _parse_window(window)
    return arr[w1 // 2, w2 // 2]


def neighbor_offsets(nbhd):
    """Row-major offsets of an ``nbhd x nbhd`` neighbourhood."""
    if nbhd < 1 or nbhd % 2 == 0:
        raise ShapeError(f"neighbourhood size must be odd and positive, got {nbhd}")
    h = nbhd // 2
    return [(dr, dc) for dr in range(-h, h + 1) for dc in range(-h, h + 1)]


def build_hyperpixel_tmatrix(tcube, pos, nbhd=5):
    """Columns are the t-hyperpixels of the ``nbhd x nbhd`` neighbourhood of ``pos``.

    Parameters
    ----------
    tcube : ndarray
        Tensorized cube of shape ``(w1, w2, H, W, D)``.
    pos : (int, int)
        Pixel position (zero-based).

    Returns
    -------
    TMatrix
        ``D x nbhd**2`` with t-scalar shape ``(w1, w2)``; neighbours are taken in
        row-major order and those outside the image are zero columns.
    """
    tcube = np.asarray(tcube)
    if tcube.ndim != 5:
        raise ShapeError(f"expected a tensorized cube (w1, w2, H, W, D), got shape {tcube.shape}")
    h, w = tcube.shape[2:4]
    r, c = (int(p) for p in pos)
    if not (0 <= r < h and 0 <= c < w):
        raise IndexError(f"position {(r, c)} outside a {h} x {w} image")
    offs = neighbor_offsets(nbhd)
    data = np.zeros(tcube.shape[:2] + (tcube.shape[4], len(offs)))
    for j, (dr, dc) in enumerate(offs):
        rr, cc = r + dr, c + dc
        if 0 <= rr < h and 0 <= cc < w:
            data[..., j] = tcube[:, :, rr, cc, :]
    return TMatrix(data, 2)


def resize_bicubic(img, size):
    """Bicubic resize to ``size = (rows, cols)`` using pixel-centre alignment."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ShapeError("resize expects a 2-D image")
    rows, cols = (int(n) for n in size)
    out = Image.fromarray(img.astype(np.float32)).resize((cols, rows), Image.Resampling.BICUBIC)
    return np.asarray(out, dtype=np.float64)


def stack_columns(img):
    """Vectorize an image by stacking its columns."""
    return np.asarray(img).reshape(-1, order="F")


def unstack_columns(vec, shape):
    return np.asarray(vec).reshape(shape, order="F")
