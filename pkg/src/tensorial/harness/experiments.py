"""Experiment drivers behind the command-line interface.

Each ``cmd_*`` function takes arrays (not paths) and returns an
:class:`~tensorial.harness.report.ExperimentReport`.  Canonical methods (SVD,
HOSVD, PCA, 2DPCA, GCA) run through the same t-algebra code with a ``1 x 1``
window, which is exactly the classical computation.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..analysis import nn_classify_batch, t2dpca_fit, tgca_fit, tpca_fit
from ..decomp import thosvd, tsvd
from ..errors import DataError, UsageError
from ..gtensor import GTensor
from ..tmatrix import TMatrix, hstack
from .data import build_hyperpixel_tmatrix, central_slice, tensorize_neighborhood, unstack_columns
from .metrics import kappa, overall_accuracy, psnr
from .report import ExperimentReport
from .synthetic import make_rng

#: Reconstruction errors below this fraction of the signal norm are round-off
#: and are reported as an exact match (PSNR ``inf``).
EXACT_TOL = 1e-9

APPROX_METHODS = {
    (2, "vertical"): ("svd", "tsvd"),
    (2, "horizontal"): ("tsvd", "hosvd"),
    (3, "vertical"): ("hosvd", "thosvd"),
    (3, "horizontal"): ("thosvd", "hosvd"),
}
RECONSTRUCT_METHODS = ("pca", "tpca", "2dpca", "t2dpca")
CLASSIFY_METHODS = ("tgca1", "tgca2", "tpca", "pca", "gca")
BENCH_OPS = ("add", "htranspose", "mul", "tsvd")


def _pmap(fn, items, threads):
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def default_grid(d_max, step=5):
    """``{step, 2*step, ...} < d_max`` followed by ``d_max`` itself."""
    return [d for d in range(step, d_max, step)] + [d_max]


def _check_grid(grid, d_max, what="d"):
    grid = default_grid(d_max) if grid is None else [int(d) for d in grid]
    bad = [d for d in grid if not 1 <= d <= d_max]
    if bad:
        raise UsageError(f"{what} values {bad} outside 1..{d_max}")
    return sorted(set(grid))


def _rank_text(r):
    return "r=" + ("x".join(str(k) for k in r) if isinstance(r, tuple) else str(r))


# low-rank approximation -----------------------------------------------------


def _full_ranks(r, dims):
    if isinstance(r, tuple):
        if len(r) != len(dims):
            raise UsageError(f"rank tuple {r} needs {len(dims)} entries")
        return r
    return (r, r) + tuple(dims[2:])


def _hosvd_approx(arr, ranks_list, lead=()):
    """HOSVD truncations of a real array; ``lead`` fixes ranks of leading modes."""
    f = thosvd(GTensor(arr[None], 1))
    out = []
    for r in ranks_list:
        out.append(f.truncate(tuple(lead) + r).real_data()[0])
    return out


def cmd_approx(image, ranks, compare="vertical", methods=None, window=(3, 3), threads=1):
    """Low-rank approximation PSNR per rank.

    ``vertical``: the canonical method on the raw image against the central
    slice of the t-method on the tensorized image.  ``horizontal``: both
    methods on the same tensorized array, PSNR over the whole array.
    """
    image = np.asarray(image, dtype=np.float64)
    key = (image.ndim, compare)
    if key not in APPROX_METHODS:
        raise UsageError(f"no {compare} comparison for {image.ndim}-d input")
    pair = APPROX_METHODS[key]
    methods = pair if methods is None else tuple(methods)
    unsupported = [m for m in methods if m not in pair]
    if unsupported:
        raise UsageError(f"{compare} comparison on {image.ndim}-d input supports {pair}, not {unsupported}")
    ranks = list(ranks)
    report = ExperimentReport()
    t_img = tensorize_neighborhood(image, window)
    w = t_img.shape[:2]
    if image.ndim == 3:
        ranks = [_full_ranks(r, image.shape) for r in ranks]

    results = {}
    for m in methods:
        if m == "svd":
            u, s, vh = np.linalg.svd(image, full_matrices=False)
            approx = [(u[:, :r] * s[:r]) @ vh[:r] for r in ranks]
            results[m] = [(image, a) for a in approx]
        elif m == "tsvd":
            f = tsvd(TMatrix(t_img, 2))
            _check_ranks(ranks, f.rank_bound)
            approx = _pmap(lambda r: f.truncate(r).real_data(), ranks, threads)
            if compare == "vertical":
                results[m] = [(image, central_slice(a, window)) for a in approx]
            else:
                results[m] = [(t_img, a) for a in approx]
        elif m == "thosvd":
            f = thosvd(GTensor(t_img, 2))
            approx = _pmap(lambda r: f.truncate(r).real_data(), ranks, threads)
            if compare == "vertical":
                results[m] = [(image, central_slice(a, window)) for a in approx]
            else:
                results[m] = [(t_img, a) for a in approx]
        elif m == "hosvd":
            if compare == "vertical":
                results[m] = [(image, a) for a in _hosvd_approx(image, [tuple(r) for r in ranks])]
            else:
                rr = [r if isinstance(r, tuple) else (r, r) for r in ranks]
                results[m] = [(t_img, a) for a in _hosvd_approx(t_img, rr, lead=w)]
    for m, pairs in results.items():
        for r, (ref, a) in zip(ranks, pairs):
            report.add(m, _rank_text(r), "psnr", psnr(ref, a, exact_tol=EXACT_TOL))
    if len(results) == 2:
        canon, tmeth = (pair[0], pair[1]) if compare == "vertical" else (pair[1], pair[0])
        for r in ranks:
            a = report.value(tmeth, _rank_text(r), "psnr")
            b = report.value(canon, _rank_text(r), "psnr")
            if math.isfinite(a) and math.isfinite(b):
                report.add(f"{tmeth}-{canon}", _rank_text(r), "psnr_gap", a - b)
    return report


def _check_ranks(ranks, q):
    bad = [r for r in ranks if not 1 <= r <= q]
    if bad:
        raise UsageError(f"ranks {bad} outside 1..{q}")


# reconstruction -------------------------------------------------------------


def _vectorize_t(t_img):
    # column stacking over the image axes, keeping the t-scalar axes in front
    w1, w2, h, w = t_img.shape
    return np.transpose(t_img, (0, 1, 3, 2)).reshape(w1, w2, h * w)


def _reconstruct_samples(images, method, window):
    win = (1, 1) if method in ("pca", "2dpca") else window
    out = []
    for img in images:
        t = tensorize_neighborhood(img, win)
        if method in ("pca", "tpca"):
            out.append(TMatrix(_vectorize_t(t)[..., None], 2))
        else:
            out.append(TMatrix(t, 2))
    return out, win


def cmd_reconstruct(train, queries, method, d_grid=None, window=(3, 3), threads=1):
    """Fit on ``train`` and report PSNR statistics of reconstructed ``queries``.

    Rows per ``d``: ``A`` (mean PSNR), ``S`` (standard deviation) and
    ``A/S``.  Non-finite ``S`` and ``A/S`` values are omitted.
    """
    if method not in RECONSTRUCT_METHODS:
        raise UsageError(f"unknown reconstruction method {method!r}")
    train = [np.asarray(x, dtype=np.float64) for x in train]
    queries = [np.asarray(x, dtype=np.float64) for x in queries]
    if len(train) < 2:
        raise DataError("need at least two training images")
    shapes = {x.shape for x in train + queries}
    if len(shapes) != 1 or len(next(iter(shapes))) != 2:
        raise DataError(f"all images must be 2-D with one common shape, got {sorted(shapes)}")
    (shape,) = shapes
    samples, win = _reconstruct_samples(train, method, window)
    qsamples, _ = _reconstruct_samples(queries, method, window)
    model = (tpca_fit if method in ("pca", "tpca") else t2dpca_fit)(samples)
    grid = _check_grid(d_grid, model.dim)
    # all query features side by side, so each d needs one product
    feats = hstack([model.transform(q, model.dim) for q in qsamples])
    cols = model.mean.cols
    mean = np.tile(model.mean.data, (1,) * (model.mean.data.ndim - 1) + (len(queries),))

    def run(d):
        rec_all = (model.basis[:, :d] @ feats[:d, :]).real_data() + mean.real
        values = []
        for n, q_img in enumerate(queries):
            rec = central_slice(rec_all[..., n * cols:(n + 1) * cols], win)
            rec = unstack_columns(rec[:, 0], shape) if method in ("pca", "tpca") else rec
            values.append(psnr(q_img, rec, exact_tol=EXACT_TOL))
        return d, values

    report = ExperimentReport()
    for d, values in _pmap(run, grid, threads):
        a = math.inf if any(math.isinf(v) for v in values) else float(np.mean(values))
        report.add(method, f"d={d}", "A", a)
        if math.isfinite(a):
            s = float(np.std(values))
            report.add(method, f"d={d}", "S", s)
            if s > 0:
                report.add(method, f"d={d}", "A/S", a / s)
    return report


# classification -------------------------------------------------------------


def split_indices(n, frac, seed):
    """Seeded uniform split of ``range(n)`` into sorted observed/query indices."""
    if not 0 < frac < 1:
        raise UsageError(f"split fraction must lie in (0, 1), got {frac}")
    perm = make_rng(seed).permutation(n)
    k = min(max(1, int(round(frac * n))), n - 1)
    return np.sort(perm[:k]), np.sort(perm[k:])


def classification_pixels(labels, nbhd):
    """Foreground pixels whose whole ``nbhd x nbhd`` neighbourhood lies inside the image."""
    h, w = labels.shape
    if nbhd < 1 or nbhd % 2 == 0:
        raise UsageError(f"neighbourhood size must be odd and positive, got {nbhd}")
    half = nbhd // 2
    mask = labels > 0
    inner = np.zeros_like(mask)
    inner[half:h - half, half:w - half] = True
    return np.argwhere(mask & inner)


def cmd_classify(cube, labels, method, split=0.10, seed=0, d_grid=None, window=(3, 3), nbhd=5, threads=1):
    """Nearest-neighbour pixel classification after feature extraction.

    Observed pixels (a seeded ``split`` fraction of the foreground) fit the
    analyzer; the remaining foreground pixels are classified and scored.
    Rows per feature dimension: ``oa`` and ``kappa``.  Classes missing from
    the observed set get an ``absent_from_observed`` row.
    """
    if method not in CLASSIFY_METHODS:
        raise UsageError(f"unknown classification method {method!r}")
    cube = np.asarray(cube, dtype=np.float64)
    labels = np.asarray(labels)
    if cube.ndim != 3 or labels.shape != cube.shape[:2]:
        raise DataError(f"need a cube (H, W, D) and labels (H, W), got {cube.shape} and {labels.shape}")
    if not np.all(np.equal(np.mod(labels, 1), 0)) or labels.min() < 0:
        raise DataError("labels must be nonnegative integers")
    labels = labels.astype(np.int64)
    pix = classification_pixels(labels, nbhd)
    if len(pix) < 3:
        raise DataError("too few usable foreground pixels")
    obs, qry = split_indices(len(pix), split, seed)
    truth = labels[pix[:, 0], pix[:, 1]]
    report = ExperimentReport()
    report.add(method, "-", "observed", len(obs))
    report.add(method, "-", "queries", len(qry))
    for c in sorted(set(truth.tolist()) - set(truth[obs].tolist())):
        report.add(method, f"class={c}", "absent_from_observed", 1)

    win = (1, 1) if method in ("pca", "gca") else window
    tcube = tensorize_neighborhood(cube, win)
    bands = cube.shape[2]

    if method in ("pca", "tpca"):
        samples = [TMatrix(tcube[:, :, r, c, :][..., None], 2) for r, c in pix]
        model = tpca_fit([samples[i] for i in obs])
        feats = [model.transform(s, model.dim).data for s in samples]
        grid = _check_grid(d_grid, model.dim)

        def features(d, idx):
            return [feats[i][..., :d, :] for i in idx]
    else:
        if bands <= nbhd * nbhd:
            raise DataError(
                f"TGCA needs more bands than neighbours: {bands} bands, {nbhd}x{nbhd} neighbourhood"
            )
        samples = [build_hyperpixel_tmatrix(tcube, (r, c), nbhd) for r, c in pix]
        model = tgca_fit([samples[i] for i in obs])
        k = model.num_samples
        obs_feats = model.features_observed()
        qpos = {int(i): j for j, i in enumerate(obs)}
        feats = [
            obs_feats[qpos[i]].data if i in qpos else model.features_query(samples[i]).data
            for i in range(len(samples))
        ]
        grid = _check_grid(d_grid, k)
        pooled = method == "tgca1"

        def features(d, idx):
            out = [feats[i][..., :d, :] for i in idx]
            if pooled:
                out = [np.mean(f, axis=(0, 1)) for f in out]
            return out

    def run(d):
        pred = nn_classify_batch(features(d, obs), truth[obs], features(d, qry))
        return d, overall_accuracy(pred, truth[qry]), kappa(pred, truth[qry])

    for d, oa, kp in _pmap(run, grid, threads):
        report.add(method, f"d={d}", "oa", oa)
        report.add(method, f"d={d}", "kappa", kp)
    return report


# benchmark ------------------------------------------------------------------


def _time(fn, trials):
    total = 0.0
    for _ in range(trials):
        args = fn.prepare()
        t0 = time.perf_counter()
        fn(*args)
        total += time.perf_counter() - t0
    return total / trials


class _Op:
    def __init__(self, op, shape, dim, rng):
        self.op, self.shape, self.dim, self.rng = op, tuple(shape), dim, rng
        self.baseline = all(n == 1 for n in self.shape)

    def prepare(self):
        a = self.rng.normal(size=self.shape + (self.dim, self.dim))
        b = self.rng.normal(size=self.shape + (self.dim, self.dim))
        if self.baseline:
            return a.reshape(self.dim, self.dim), b.reshape(self.dim, self.dim)
        nd = len(self.shape)
        return TMatrix(a, nd), TMatrix(b, nd)

    def __call__(self, a, b):
        if self.baseline:
            if self.op == "add":
                return a + b
            if self.op == "htranspose":
                return np.ascontiguousarray(a.conj().T)
            if self.op == "mul":
                return a @ b
            return np.linalg.svd(a)
        if self.op == "add":
            return (a + b).data
        if self.op == "htranspose":
            return a.H.data
        if self.op == "mul":
            return (a @ b).data
        return tsvd(a)


def cmd_bench(shapes, dim=64, ops=("mul", "tsvd"), trials=3, seed=0):
    """Mean wall time per operation on random real ``dim x dim`` t-matrices.

    The all-ones shape is timed with plain numpy on one matrix, so it
    contains no Fourier transforms.  Timings vary run to run.
    """
    if trials < 1:
        raise UsageError("trials must be at least 1")
    bad = [op for op in ops if op not in BENCH_OPS]
    if bad:
        raise UsageError(f"unknown bench operations {bad}")
    rng = make_rng(seed)
    report = ExperimentReport()
    for shape in shapes:
        shape = tuple(int(n) for n in shape)
        param = "shape=" + "x".join(str(n) for n in shape)
        for op in ops:
            secs = _time(_Op(op, shape, dim, rng), trials)
            report.add(op, param, "slices", int(np.prod(shape)))
            report.add(op, param, "seconds", secs)
    return report
