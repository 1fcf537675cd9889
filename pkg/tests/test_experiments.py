import math

import numpy as np
import pytest

from tensorial.errors import DataError, UsageError
from tensorial.harness.experiments import (
    cmd_approx,
    cmd_bench,
    cmd_classify,
    cmd_reconstruct,
    default_grid,
    split_indices,
)
from tensorial.harness.synthetic import face_images, labeled_cube, sample_image


def psnrs(report, method):
    return [r.value for r in report.select(method, "psnr")]


def test_default_grid():
    assert default_grid(12) == [5, 10, 12]
    assert default_grid(3) == [3]


def test_approx_vertical():
    img = sample_image(24)
    rep = cmd_approx(img, [2, 4, 8, 24])
    t = psnrs(rep, "tsvd")
    assert t[-1] == math.inf
    assert all(b >= a for a, b in zip(t, t[1:]))
    assert rep.value("svd", "r=24", "psnr") == math.inf
    assert len(rep.select("tsvd-svd", "psnr_gap")) == 3


def test_approx_horizontal_and_color():
    img = sample_image(16)
    rep = cmd_approx(img, [2, 4], "horizontal")
    assert {r.method for r in rep.rows} == {"tsvd", "hosvd", "tsvd-hosvd"}
    rgb = np.stack([img, img[::-1], img.T], axis=-1)
    rep = cmd_approx(rgb, [4, (8, 8, 2)])
    assert rep.value("thosvd", "r=4x4x3", "psnr") > 0
    assert {r.param for r in rep.select("hosvd")} == {"r=4x4x3", "r=8x8x2"}


def test_approx_errors():
    img = sample_image(16)
    with pytest.raises(UsageError):
        cmd_approx(img, [2], methods=["thosvd"])
    with pytest.raises(UsageError):
        cmd_approx(img, [17])
    with pytest.raises(UsageError):
        cmd_approx(img[None, None], [2])


def test_reconstruct_query_in_train():
    faces = face_images(6, shape=(12, 10), seed=1)
    rep = cmd_reconstruct(faces, faces[:2], "tpca", [120])
    assert rep.value("tpca", "d=120", "A") == math.inf
    assert not rep.select("tpca", "S")


def test_reconstruct_t2dpca_one_column_matches_tpca():
    # images with one column make T2DPCA and TPCA the same pipeline
    rng = np.random.default_rng(3)
    train = [rng.uniform(0, 255, size=(9, 1)) for _ in range(6)]
    queries = [rng.uniform(0, 255, size=(9, 1)) for _ in range(3)]
    a = cmd_reconstruct(train, queries, "tpca", [2, 5, 9])
    b = cmd_reconstruct(train, queries, "t2dpca", [2, 5, 9])
    assert [r.value for r in a.sorted_rows()] == [r.value for r in b.sorted_rows()]


def test_reconstruct_monotone_and_errors():
    faces = face_images(10, shape=(12, 10), seed=4)
    rep = cmd_reconstruct(faces[:6], faces[6:], "t2dpca", [2, 4, 8, 12])
    a = [r.value for r in rep.select("t2dpca", "A")]
    assert all(y >= x for x, y in zip(a, a[1:]))
    with pytest.raises(DataError):
        cmd_reconstruct(faces[:3], [np.zeros((5, 5))], "pca")
    with pytest.raises(UsageError):
        cmd_reconstruct(faces[:3], faces[3:4], "pca", [0])
    with pytest.raises(UsageError):
        cmd_reconstruct(faces[:3], faces[3:4], "ica")


def test_split_indices():
    obs, qry = split_indices(50, 0.1, 7)
    assert len(obs) == 5 and len(qry) == 45
    assert sorted(set(obs) | set(qry)) == list(range(50))
    o2, _ = split_indices(50, 0.1, 7)
    assert np.array_equal(obs, o2)
    with pytest.raises(UsageError):
        split_indices(10, 1.0, 0)


def two_class_cube():
    labels = np.zeros((12, 12), dtype=int)
    labels[1:6, 1:6] = 1
    labels[6:11, 6:11] = 2
    cube = np.zeros((12, 12, 6))
    cube[labels == 1] = [1, 1, 1, 0, 0, 0]
    cube[labels == 2] = [0, 0, 0, 1, 1, 1]
    rng = np.random.default_rng(0)
    cube += 0.1 * rng.normal(size=cube.shape)
    return cube, labels


@pytest.mark.parametrize("method", ["tgca1", "tgca2", "tpca", "pca", "gca"])
def test_classify_separable_classes(method):
    cube, labels = two_class_cube()
    rep = cmd_classify(cube, labels, method, split=0.2, nbhd=1)
    oa = [r.value for r in rep.select(method, "oa")]
    assert max(oa) == 1.0
    if method.startswith("tgca") or method == "gca":
        obs = rep.value(method, "-", "observed")
        assert max(int(r.param[2:]) for r in rep.select(method, "oa")) == obs


def test_classify_absent_class_recorded():
    cube, labels = two_class_cube()
    labels = labels.copy()
    labels[0, 0] = 3
    cube[0, 0] = [0, 1, 0, 1, 0, 1]
    rep = cmd_classify(cube, labels, "pca", split=0.05, seed=0, nbhd=1)
    assert rep.value("pca", "class=3", "absent_from_observed") == 1
    assert rep.select("pca", "oa")


def test_classify_errors():
    cube, labels = two_class_cube()
    with pytest.raises(DataError):
        cmd_classify(cube, labels, "tgca1", nbhd=3)
    with pytest.raises(DataError):
        cmd_classify(cube, labels[:5], "tpca")
    with pytest.raises(UsageError):
        cmd_classify(cube, labels, "svm")
    with pytest.raises(UsageError):
        cmd_classify(cube, labels, "tpca", nbhd=2)


def test_classify_deterministic_across_threads():
    lc = labeled_cube(seed=1)
    a = cmd_classify(lc.cube, lc.labels, "tgca2", seed=3, nbhd=1, threads=1)
    b = cmd_classify(lc.cube, lc.labels, "tgca2", seed=3, nbhd=1, threads=4)
    assert a.to_csv() == b.to_csv()


def test_bench_smoke():
    rep = cmd_bench([(1, 1), (2, 2)], dim=8, ops=["add", "htranspose", "mul", "tsvd"], trials=1)
    assert rep.value("mul", "shape=2x2", "slices") == 4
    assert all(r.value >= 0 for r in rep.select(metric="seconds"))
    with pytest.raises(UsageError):
        cmd_bench([(2,)], ops=["fft"])
    with pytest.raises(UsageError):
        cmd_bench([(2,)], trials=0)
