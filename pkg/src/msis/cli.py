"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 I/O or format error,
3 dimension or validation error.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path

from . import metrics
from .codec import decode_group, encode_batch
from .errors import (
    DimensionMismatch,
    EmptyInput,
    MalformedContainer,
    MalformedFile,
    SinkFailure,
    UnsupportedFormat,
)
from .keygen import derive_key
from .shareio import read_image, read_share, share_filename, write_image, write_share

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVALID = 3

IMAGE_SUFFIXES = {".pgm", ".ppm", ".png"}


class CommandError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _err(*lines):
    for line in lines:
        print(line, file=sys.stderr)


def _load(path):
    """Read an image, forwarding conversion warnings to stderr."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            img = read_image(path)
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from exc
        except (UnsupportedFormat, MalformedFile) as exc:
            raise CommandError(f"{path}: {exc}", EXIT_IO) from exc
    for w in caught:
        _err(f"warning: {path}: {w.message}")
    return img


def _load_share(path):
    try:
        return read_share(path)
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from exc
    except MalformedContainer as exc:
        raise CommandError(f"{path}: malformed share: {exc}", EXIT_IO) from exc


def cmd_keygen(args):
    print(derive_key(_load(args.comparison)))
    return EXIT_OK


def cmd_encode(args):
    comparison = _load(args.comparison)
    secrets = [_load(p) for p in args.images]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            containers = encode_batch(secrets, comparison)
        except (DimensionMismatch, EmptyInput) as exc:
            raise CommandError(str(exc), EXIT_INVALID) from exc
    for w in caught:
        _err(f"warning: {w.message}")
    for index, container in enumerate(containers):
        name = share_filename(args.out, index)
        try:
            size = write_share(container, name)
        except SinkFailure as exc:
            raise CommandError(str(exc), EXIT_IO) from exc
        print(
            f"{name}: {container.num_real} secret(s) {container.secret_width}x"
            f"{container.secret_height}, share {container.share_side}x"
            f"{container.share_side}, {size} bytes"
        )
    return EXIT_OK


def cmd_decode(args):
    comparison = _load(args.comparison)
    containers = [_load_share(p) for p in args.share]
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for g, container in enumerate(containers):
            group = decode_group(container, comparison)
            for i, img in enumerate(group.secrets):
                path = out_dir / f"recovered_{g:04d}_{i}.pgm"
                write_image(img, path)
                print(path)
    except OSError as exc:
        raise CommandError(f"cannot write recovered images: {exc}", EXIT_IO) from exc
    except MalformedContainer as exc:
        raise CommandError(f"malformed share: {exc}", EXIT_IO) from exc
    return EXIT_OK


def _image_files(directory):
    try:
        entries = sorted(os.scandir(directory), key=lambda e: e.name)
    except OSError as exc:
        raise CommandError(f"cannot list {directory}: {exc.strerror or exc}", EXIT_IO) from exc
    return [Path(e.path) for e in entries if e.is_file() and Path(e.name).suffix.lower() in IMAGE_SUFFIXES]


def cmd_verify(args):
    originals = _image_files(args.original)
    recovered = _image_files(args.recovered)
    if not originals or not recovered:
        raise CommandError("no images to compare", EXIT_INVALID)
    if len(originals) != len(recovered):
        raise CommandError(
            f"{len(originals)} original vs {len(recovered)} recovered images", EXIT_INVALID
        )
    all_identical = True
    print("original recovered SSIM PSNR RMSE")
    for a_path, b_path in zip(originals, recovered):
        a, b = _load(a_path), _load(b_path)
        if a.shape != b.shape:
            raise CommandError(f"{a_path.name} and {b_path.name} differ in size", EXIT_INVALID)
        report = metrics.compare(a, b)
        all_identical &= report.identical
        print(f"{a_path.name} {b_path.name} {report.row()}")
    if args.strict and not all_identical:
        _err("verify: recovered images are not bit-identical")
        return EXIT_INVALID
    return EXIT_OK


def cmd_analyze(args):
    container = _load_share(args.share)
    share = container.share
    counts = metrics.histogram(share)
    balance = metrics.plane_balance(share)
    print(f"share: {container.share_side}x{container.share_side}, "
          f"{container.num_real} secret(s) of {container.secret_width}x{container.secret_height}")
    print(f"entropy: {metrics.entropy(share):.4f} bits/pixel")
    print(f"histogram: min bin {counts.min()}, max bin {counts.max()}")
    # bit 7 of the share carries secret 0
    for secret in range(8):
        print(f"plane {secret} (bit {7 - secret}): ones fraction {balance[7 - secret]:.4f}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="msis", description="(n, n/8) multi-secret image sharing")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="print the security key of a comparison image")
    p.add_argument("--comparison", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encode", help="hide secret images in share files")
    p.add_argument("--comparison", required=True)
    p.add_argument("--out", required=True, help="output stem, files are STEM_NNNN.msis")
    p.add_argument("images", nargs="+")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="recover secret images from share files")
    p.add_argument("--comparison", required=True)
    p.add_argument("--share", required=True, nargs="+")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="compare original and recovered images")
    p.add_argument("--original", required=True)
    p.add_argument("--recovered", required=True)
    p.add_argument("--strict", action="store_true", help="fail unless every pair is bit-identical")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="report randomness statistics of a share")
    p.add_argument("--share", required=True)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        _err(f"msis {args.command}: {exc}")
        return exc.code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
