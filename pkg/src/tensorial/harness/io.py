"""TDF tensor files and binary PGM/PPM images.

A TDF file is one line of compact JSON followed by the raw payload::

    {"magic":"TDF1","dtype":"f64","shape":[64,64],"order":"row-major","axis_roles":["row","col"]}\\n
    <little-endian float64 values, last axis fastest>

``dtype`` is ``"f64"`` or ``"c128"``; complex payloads interleave real and
imaginary parts.  The payload must hold exactly ``8 * (1 or 2) * prod(shape)``
bytes.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from ..errors import DataError

MAGIC = "TDF1"
_DTYPES = {"f64": np.dtype("<f8"), "c128": np.dtype("<c16")}
#: Refuse headers that would describe more than this many payload bytes.
MAX_PAYLOAD_BYTES = 1 << 40
IMAGE_SUFFIXES = (".pgm", ".ppm", ".pnm", ".png")


class BadMagicError(DataError):
    code = "bad_magic"


class BadHeaderError(DataError):
    code = "bad_header"


class TruncatedPayloadError(DataError):
    code = "truncated_payload"


class ShapeOverflowError(DataError):
    code = "shape_overflow"


@dataclass
class TensorFile:
    array: np.ndarray
    axis_roles: list = field(default_factory=list)

    @property
    def dtype_tag(self):
        return "c128" if np.iscomplexobj(self.array) else "f64"


def encode_tdf(tf):
    arr = np.asarray(tf.array)
    tag = "c128" if np.iscomplexobj(arr) else "f64"
    arr = np.ascontiguousarray(arr, dtype=_DTYPES[tag])
    roles = list(tf.axis_roles) if tf.axis_roles else [f"axis{k}" for k in range(arr.ndim)]
    if len(roles) != arr.ndim:
        raise DataError(f"{len(roles)} axis roles given for a {arr.ndim}-d array")
    header = {
        "magic": MAGIC,
        "dtype": tag,
        "shape": list(arr.shape),
        "order": "row-major",
        "axis_roles": roles,
    }
    line = json.dumps(header, separators=(",", ":")).encode("utf-8") + b"\n"
    return line + arr.tobytes(order="C")


def decode_tdf(raw):
    nl = raw.find(b"\n")
    if nl < 0:
        raise BadMagicError("no TDF header line found")
    try:
        header = json.loads(raw[:nl].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise BadMagicError(f"header is not TDF JSON: {exc}") from exc
    if not isinstance(header, dict) or header.get("magic") != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}")
    dtype = _DTYPES.get(header.get("dtype"))
    shape = header.get("shape")
    if dtype is None:
        raise BadHeaderError(f"unknown dtype {header.get('dtype')!r}")
    if header.get("order", "row-major") != "row-major":
        raise BadHeaderError(f"unsupported order {header.get('order')!r}")
    if not isinstance(shape, list) or not all(isinstance(n, int) and not isinstance(n, bool) for n in shape):
        raise BadHeaderError(f"shape must be a list of integers, got {shape!r}")
    if any(n < 0 for n in shape):
        raise ShapeOverflowError(f"negative dimension in shape {shape}")
    nbytes = dtype.itemsize
    for n in shape:
        nbytes *= n
    if nbytes > MAX_PAYLOAD_BYTES:
        raise ShapeOverflowError(f"shape {shape} describes {nbytes} bytes")
    payload = raw[nl + 1:]
    if len(payload) != nbytes:
        raise TruncatedPayloadError(f"payload has {len(payload)} bytes, header needs {nbytes}")
    arr = np.frombuffer(payload, dtype=dtype).reshape(shape)
    roles = header.get("axis_roles") or []
    return TensorFile(arr.astype(dtype.newbyteorder("=")), list(roles))


def write_tdf(path, array, axis_roles=None):
    tf = array if isinstance(array, TensorFile) else TensorFile(np.asarray(array), axis_roles or [])
    with open(path, "wb") as fh:
        fh.write(encode_tdf(tf))


def read_tdf(path):
    with open(path, "rb") as fh:
        return decode_tdf(fh.read())


def read_image(path):
    """Read a grayscale (H x W) or RGB (H x W x 3) image as float64."""
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode in ("L", "I", "I;16", "F"):
                return np.asarray(im, dtype=np.float64)
            return np.asarray(im.convert("RGB"), dtype=np.float64)
    except (OSError, ValueError) as exc:
        raise DataError(f"cannot read image {path}: {exc}", "bad_image") from exc


def write_image(path, array):
    """Write an 8-bit grayscale (PGM) or RGB (PPM) image, rounding and clipping."""
    arr = np.clip(np.rint(np.asarray(array, dtype=np.float64)), 0, 255).astype(np.uint8)
    if not (arr.ndim == 2 or (arr.ndim == 3 and arr.shape[2] == 3)):
        raise DataError(f"cannot write an array of shape {arr.shape} as an image")
    im = Image.fromarray(arr)
    fmt = "PPM" if os.path.splitext(str(path))[1].lower() in (".pgm", ".ppm", ".pnm") else None
    im.save(path, format=fmt)


def load_array(path):
    """Load a TDF file or an image, dispatching on the file suffix."""
    if str(path).lower().endswith(IMAGE_SUFFIXES):
        return read_image(path)
    return np.asarray(read_tdf(path).array)
