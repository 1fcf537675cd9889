import json

import numpy as np
import pytest

from tensorial.harness.cli import main
from tensorial.harness.io import read_image, read_tdf, write_image, write_tdf
from tensorial.harness.synthetic import face_images, labeled_cube, sample_image


@pytest.fixture
def files(tmp_path):
    write_image(tmp_path / "img.pgm", sample_image(20))
    faces = face_images(8, shape=(10, 8), seed=0)
    write_tdf(tmp_path / "train.tdf", np.stack(faces[:5]))
    write_tdf(tmp_path / "query.tdf", np.stack(faces[5:]))
    lc = labeled_cube(seed=0)
    write_tdf(tmp_path / "cube.tdf", lc.cube, ["row", "col", "band"])
    write_tdf(tmp_path / "labels.tdf", lc.labels.astype(float), ["row", "col"])
    return tmp_path


def test_approx(files, capsys):
    assert main(["approx", "--input", str(files / "img.pgm"), "--ranks", "2,4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "method,param,metric,value"
    assert any(line.startswith("tsvd-svd,r=2,psnr_gap,") for line in out)


def test_reconstruct_json(files, capsys):
    args = ["reconstruct", "--train", str(files / "train.tdf"), "--query", str(files / "query.tdf")]
    assert main(args + ["--method", "t2dpca", "--d-grid", "2,10", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert {r["param"] for r in rows} == {"d=2", "d=10"}


def test_classify_to_file(files):
    out = files / "rep.csv"
    args = ["classify", "--input", str(files / "cube.tdf"), "--labels", str(files / "labels.tdf")]
    assert main(args + ["--method", "tpca", "--nbhd", "1", "--out", str(out)]) == 0
    assert out.read_text().startswith("method,param,metric,value\n")


def test_bench(capsys):
    assert main(["bench", "--shapes", "1x1,2x2", "--dim", "4", "--trials", "1", "--method", "mul"]) == 0
    assert "mul,shape=2x2,slices,4" in capsys.readouterr().out


def test_convert(files):
    assert main(["convert", "--input", str(files / "img.pgm"), "--out", str(files / "img.tdf")]) == 0
    assert np.array_equal(read_tdf(files / "img.tdf").array, read_image(files / "img.pgm"))
    assert main(["convert", "--input", str(files / "img.tdf"), "--out", str(files / "b.pgm"), "--resize", "10x10"]) == 0
    assert read_image(files / "b.pgm").shape == (10, 10)


def test_usage_errors(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(["approx", "--ranks", "2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["classify", "--input", "x", "--labels", "y", "--method", "svm"])
    assert info.value.code == 2
    assert main(["approx", "--input", str(files / "img.pgm"), "--ranks", "2", "--method", "hosvd"]) == 2
    assert main(["approx", "--input", str(files / "img.pgm"), "--ranks", "2", "--threads", "0"]) == 2


def test_data_errors(files, capsys):
    assert main(["approx", "--input", str(files / "missing.pgm"), "--ranks", "2"]) == 3
    (files / "bad.tdf").write_bytes(b"garbage")
    assert main(["approx", "--input", str(files / "bad.tdf"), "--ranks", "2"]) == 3
    args = ["classify", "--input", str(files / "cube.tdf"), "--labels", str(files / "labels.tdf")]
    assert main(args + ["--method", "tgca1"]) == 3
    assert "data error" in capsys.readouterr().err


def test_numerical_failure(files, capsys):
    # one repeated pixel value everywhere makes the TGCA Gram matrix singular
    cube = np.ones((10, 10, 6))
    labels = np.ones((10, 10))
    write_tdf(files / "flat.tdf", cube)
    write_tdf(files / "flat_lab.tdf", labels)
    args = ["classify", "--input", str(files / "flat.tdf"), "--labels", str(files / "flat_lab.tdf")]
    assert main(args + ["--method", "gca", "--nbhd", "1", "--split", "0.2"]) == 4
    assert "numerical failure" in capsys.readouterr().err
