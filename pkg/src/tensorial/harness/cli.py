"""Command-line entry point: ``tensorial <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.
"""

import argparse
import sys

import numpy as np

from ..errors import (
    DataError,
    DecompositionError,
    DomainError,
    ModelError,
    OrthogonalizationError,
    ShapeError,
    SingularElementError,
    UsageError,
)
from . import experiments
from .data import resize_bicubic
from .io import IMAGE_SUFFIXES, load_array, read_image, read_tdf, write_image, write_tdf

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4
NUMERIC_ERRORS = (DecompositionError, OrthogonalizationError, SingularElementError, ModelError, DomainError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _size(text):
    try:
        parts = tuple(int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected sizes like 3x3, got {text!r}")
    if len(parts) != 2 or min(parts) < 1:
        raise argparse.ArgumentTypeError(f"expected two positive sizes like 3x3, got {text!r}")
    return parts


def _int_list(text):
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _ranks(text):
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            vals = tuple(int(p) for p in item.lower().split("x"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad rank {item!r}; use 8 or 8x8x3")
        out.append(vals[0] if len(vals) == 1 else vals)
    return out


def _shapes(text):
    return [_size(item) for item in text.split(",") if item.strip()]


def build_parser():
    p = _Parser(prog="tensorial", description="t-scalar algebra experiments")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--threads", type=int, default=1)

    a = sub.add_parser("approx", help="low-rank approximation PSNR")
    a.add_argument("--input", required=True, help="image (PGM/PPM) or TDF array")
    a.add_argument("--method", help="comma list; default: both methods of the comparison")
    a.add_argument("--ranks", type=_ranks, required=True, help="e.g. 4,8,16 or 8x8x3,16x16x3")
    a.add_argument("--compare", choices=("vertical", "horizontal"), default="vertical")
    a.add_argument("--window", type=_size, default=(3, 3))
    common(a)

    r = sub.add_parser("reconstruct", help="PCA-style reconstruction PSNR statistics")
    r.add_argument("--train", nargs="+", required=True, help="images, or TDF stacks of shape (K, H, W)")
    r.add_argument("--query", nargs="+", required=True)
    r.add_argument("--method", choices=experiments.RECONSTRUCT_METHODS, required=True)
    r.add_argument("--d-grid", type=_int_list)
    r.add_argument("--window", type=_size, default=(3, 3))
    r.add_argument("--resize", type=_size, help="bicubic resize to ROWSxCOLS first")
    common(r)

    c = sub.add_parser("classify", help="hyperspectral pixel classification")
    c.add_argument("--input", required=True, help="TDF cube (H, W, D)")
    c.add_argument("--labels", required=True, help="TDF or image label map (H, W)")
    c.add_argument("--method", choices=experiments.CLASSIFY_METHODS, required=True)
    c.add_argument("--split", type=float, default=0.10)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--d-grid", type=_int_list)
    c.add_argument("--window", type=_size, default=(3, 3))
    c.add_argument("--nbhd", type=int, default=5)
    common(c)

    b = sub.add_parser("bench", help="time t-matrix operations against slice count")
    b.add_argument("--shapes", type=_shapes, default=[(1, 1), (2, 2), (4, 4), (8, 8)])
    b.add_argument("--dim", type=int, default=64)
    b.add_argument("--method", default="mul,tsvd", help=f"comma list from {experiments.BENCH_OPS}")
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    common(b)

    v = sub.add_parser("convert", help="convert between images and TDF files")
    v.add_argument("--input", required=True)
    v.add_argument("--out", required=True)
    v.add_argument("--resize", type=_size)
    return p


def _load_stack(paths, resize=None):
    images = []
    for path in paths:
        arr = load_array(path)
        stack = [arr] if arr.ndim == 2 else list(arr)
        for img in stack:
            images.append(resize_bicubic(img, resize) if resize else img)
    return images


def _emit(report, args):
    text = report.render(args.format)
    if args.out:
        report.write(args.out, args.format)
    else:
        sys.stdout.write(text)


def _convert(args):
    src = str(args.input).lower()
    arr = read_image(args.input) if src.endswith(IMAGE_SUFFIXES) else read_tdf(args.input).array
    if args.resize:
        if arr.ndim != 2:
            raise DataError("only 2-D arrays can be resized")
        arr = resize_bicubic(arr, args.resize)
    if str(args.out).lower().endswith(IMAGE_SUFFIXES):
        if np.iscomplexobj(arr):
            raise DataError("complex arrays cannot be written as images")
        write_image(args.out, arr)
    else:
        roles = ["row", "col", "channel"][: arr.ndim] if arr.ndim <= 3 else None
        write_tdf(args.out, arr, roles)


def run(args):
    cmd = args.command
    if cmd == "convert":
        _convert(args)
        return
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    if cmd == "approx":
        methods = args.method.split(",") if args.method else None
        report = experiments.cmd_approx(
            load_array(args.input), args.ranks, args.compare, methods, args.window, args.threads
        )
    elif cmd == "reconstruct":
        report = experiments.cmd_reconstruct(
            _load_stack(args.train, args.resize),
            _load_stack(args.query, args.resize),
            args.method,
            args.d_grid,
            args.window,
            args.threads,
        )
    elif cmd == "classify":
        report = experiments.cmd_classify(
            load_array(args.input),
            load_array(args.labels),
            args.method,
            args.split,
            args.seed,
            args.d_grid,
            args.window,
            args.nbhd,
            args.threads,
        )
    else:
        ops = [m.strip() for m in args.method.split(",") if m.strip()]
        report = experiments.cmd_bench(args.shapes, args.dim, ops, args.trials, args.seed)
    _emit(report, args)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        run(args)
    except UsageError as exc:
        print(f"tensorial: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"tensorial: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, ShapeError, IndexError, OSError) as exc:
        print(f"tensorial: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
