import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorial.errors import DataError
from tensorial.harness.io import (
    BadHeaderError,
    BadMagicError,
    ShapeOverflowError,
    TensorFile,
    TruncatedPayloadError,
    decode_tdf,
    encode_tdf,
    load_array,
    read_image,
    read_tdf,
    write_image,
    write_tdf,
)


def header(**kw):
    h = {"magic": "TDF1", "dtype": "f64", "shape": [2], "order": "row-major", "axis_roles": ["x"]}
    h.update(kw)
    return json.dumps(h).encode() + b"\n"


@given(st.integers(0, 2**32 - 1), st.lists(st.integers(0, 4), min_size=1, max_size=4), st.booleans())
def test_round_trip_is_bitwise(seed, shape, complex_):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=shape)
    if complex_:
        a = a + 1j * rng.normal(size=shape)
    tf = decode_tdf(encode_tdf(TensorFile(a)))
    assert tf.array.dtype == a.dtype
    assert tf.array.tobytes() == a.tobytes()
    assert len(tf.axis_roles) == len(shape)


def test_file_round_trip(tmp_path, rng):
    a = rng.normal(size=(3, 4, 2))
    path = tmp_path / "a.tdf"
    write_tdf(path, a, ["row", "col", "band"])
    tf = read_tdf(path)
    assert np.array_equal(tf.array, a)
    assert tf.axis_roles == ["row", "col", "band"]
    assert np.array_equal(load_array(path), a)


def test_header_format(rng):
    raw = encode_tdf(TensorFile(np.zeros((2, 3)), ["row", "col"]))
    line, payload = raw.split(b"\n", 1)
    assert json.loads(line) == {
        "magic": "TDF1", "dtype": "f64", "shape": [2, 3], "order": "row-major", "axis_roles": ["row", "col"]
    }
    assert len(payload) == 48


def test_error_codes():
    cases = [
        (b"no newline at all", BadMagicError, "bad_magic"),
        (b"P5\n2 2\n255\n", BadMagicError, "bad_magic"),
        (header(magic="TDF2") + bytes(16), BadMagicError, "bad_magic"),
        (header(dtype="f32") + bytes(16), BadHeaderError, "bad_header"),
        (header(shape="2") + bytes(16), BadHeaderError, "bad_header"),
        (header(order="col-major") + bytes(16), BadHeaderError, "bad_header"),
        (header() + bytes(15), TruncatedPayloadError, "truncated_payload"),
        (header() + bytes(17), TruncatedPayloadError, "truncated_payload"),
        (header(shape=[-1, 2]), ShapeOverflowError, "shape_overflow"),
        (header(shape=[1 << 30, 1 << 30]), ShapeOverflowError, "shape_overflow"),
    ]
    codes = set()
    for raw, exc, code in cases:
        with pytest.raises(exc) as info:
            decode_tdf(raw)
        assert info.value.code == code
        assert isinstance(info.value, DataError)
        codes.add(code)
    assert len(codes) == 4


def test_axis_role_count_checked():
    with pytest.raises(DataError):
        encode_tdf(TensorFile(np.zeros((2, 2)), ["row"]))


def test_pgm_read(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 255, 255, 0]))
    img = read_image(path)
    assert img.dtype == np.float64
    assert np.array_equal(img, [[0, 255], [255, 0]])


def test_image_round_trip(tmp_path, rng):
    gray = rng.integers(0, 256, size=(5, 7)).astype(float)
    rgb = rng.integers(0, 256, size=(4, 3, 3)).astype(float)
    write_image(tmp_path / "g.pgm", gray)
    write_image(tmp_path / "c.ppm", rgb)
    assert np.array_equal(read_image(tmp_path / "g.pgm"), gray)
    assert np.array_equal(load_array(tmp_path / "c.ppm"), rgb)
    write_image(tmp_path / "clip.pgm", np.array([[-3.0, 300.0], [1.4, 1.6]]))
    assert np.array_equal(read_image(tmp_path / "clip.pgm"), [[0, 255], [1, 2]])


def test_image_errors(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"not an image")
    with pytest.raises(DataError):
        read_image(bad)
    with pytest.raises(DataError):
        write_image(tmp_path / "x.pgm", np.zeros((2, 2, 2)))
