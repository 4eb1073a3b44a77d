"""Share container files and image file I/O.

Container layout (little-endian, 36-byte header, then the share pixels)::

    offset size  field
    0      4     magic          b"MS18"
    4      2     version        1
    6      2     flags          0
    8      4     secret_width
    12     4     secret_height
    16     1     num_real       1..8
    17     7     reserved       zeros
    24     8     bit_length     8 * secret_width * secret_height
    32     4     share_side     ceil(sqrt(bit_length))
    36     side² share pixels, row-major

Images: binary PGM (P5) is read and written bit-exactly. Binary PPM (P6)
and, when Pillow is installed, PNG are read; color is reduced to
``round(0.299 R + 0.587 G + 0.114 B)`` with a warning.
"""

from __future__ import annotations

import io
import os
import re
import struct
import warnings

import numpy as np

from .bitcore import as_gray, square_side
from .codec import GROUP_SIZE, ShareContainer
from .errors import (
    BadMagic,
    ColorConversionWarning,
    HeaderInvariantViolation,
    MalformedContainer,
    MalformedFile,
    SinkFailure,
    TruncatedPayload,
    UnsupportedFormat,
    UnsupportedVersion,
)

__all__ = [
    "MAGIC",
    "VERSION",
    "HEADER",
    "write_share",
    "read_share",
    "share_to_bytes",
    "share_from_bytes",
    "share_filename",
    "read_image",
    "write_image",
    "luminance",
]

MAGIC = b"MS18"
VERSION = 1
HEADER = struct.Struct("<4sHHIIB7sQI")
assert HEADER.size == 36


def share_to_bytes(container: ShareContainer) -> bytes:
    container.validate()
    header = HEADER.pack(
        MAGIC,
        VERSION,
        0,
        container.secret_width,
        container.secret_height,
        container.num_real,
        bytes(7),
        container.bit_length,
        container.share_side,
    )
    return header + np.ascontiguousarray(container.share, dtype=np.uint8).tobytes()


def share_from_bytes(data: bytes) -> ShareContainer:
    if len(data) < HEADER.size:
        if data[: len(MAGIC)] != MAGIC[: len(data)]:
            raise BadMagic("not a share container")
        raise TruncatedPayload(f"file is {len(data)} bytes, shorter than the {HEADER.size}-byte header")
    magic, version, flags, width, height, num_real, reserved, bit_length, side = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"container version {version} is not supported")
    if flags != 0 or reserved != bytes(7):
        raise HeaderInvariantViolation("flags and reserved bytes must be zero")
    if width < 1 or height < 1:
        raise HeaderInvariantViolation(f"invalid secret size {width}x{height}")
    if not 1 <= num_real <= GROUP_SIZE:
        raise HeaderInvariantViolation(f"num_real {num_real} outside [1, {GROUP_SIZE}]")
    if bit_length != 8 * width * height:
        raise HeaderInvariantViolation(
            f"bit_length {bit_length} does not equal 8*{width}*{height}"
        )
    if side != square_side(bit_length):
        raise HeaderInvariantViolation(f"share_side {side} does not fit bit_length {bit_length}")
    payload = data[HEADER.size :]
    if len(payload) < side * side:
        raise TruncatedPayload(f"expected {side * side} share bytes, found {len(payload)}")
    if len(payload) > side * side:
        raise MalformedContainer(f"{len(payload) - side * side} unexpected trailing bytes")
    share = np.frombuffer(payload, dtype=np.uint8).reshape(side, side).copy()
    return ShareContainer(width, height, num_real, share)


def write_share(container: ShareContainer, destination) -> int:
    """Write ``container`` to a path or binary file object; returns bytes written."""
    data = share_to_bytes(container)
    try:
        if hasattr(destination, "write"):
            destination.write(data)
        else:
            with open(destination, "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise SinkFailure(f"could not write share: {exc}") from exc
    return len(data)


def read_share(source) -> ShareContainer:
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    return share_from_bytes(data)


def share_filename(stem, index: int) -> str:
    return f"{os.fspath(stem)}_{index:04d}.msis"


# -- images -----------------------------------------------------------------

def luminance(rgb) -> np.ndarray:
    """Integer luma of an ``(H, W, 3)`` array, rounded half away from zero."""
    rgb = np.asarray(rgb, dtype=np.int64)
    weighted = 299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2]
    return ((weighted + 500) // 1000).astype(np.uint8)


_TOKEN = re.compile(rb"(?:\s|#[^\n\r]*[\n\r])*(\S+)")


def _parse_pnm(data: bytes) -> np.ndarray:
    kind = data[:2]
    pos = 2
    fields = []
    for _ in range(3):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise MalformedFile("truncated PNM header")
        try:
            fields.append(int(m.group(1)))
        except ValueError:
            raise MalformedFile(f"bad PNM header field {m.group(1)!r}") from None
        pos = m.end()
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedFile(f"invalid image size {width}x{height}")
    if maxval != 255:
        raise UnsupportedFormat(f"only 8-bit PNM (maxval 255) is supported, got {maxval}")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise MalformedFile("missing whitespace after PNM header")
    pos += 1
    channels = 1 if kind == b"P5" else 3
    need = width * height * channels
    raster = data[pos : pos + need]
    if len(raster) != need:
        raise MalformedFile(f"expected {need} raster bytes, found {len(raster)}")
    pixels = np.frombuffer(raster, dtype=np.uint8)
    if channels == 1:
        return pixels.reshape(height, width).copy()
    warnings.warn("color PPM converted to luminance", ColorConversionWarning, stacklevel=3)
    return luminance(pixels.reshape(height, width, 3))


def _read_png(data: bytes) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover - depends on environment
        raise UnsupportedFormat("PNG support needs Pillow (pip install artifact[png])") from None
    try:
        im = Image.open(io.BytesIO(data))
        im.load()
    except Exception as exc:
        raise MalformedFile(f"unreadable PNG: {exc}") from exc
    if im.mode == "L":
        return np.asarray(im, dtype=np.uint8).copy()
    if im.mode not in ("RGB", "RGBA", "P", "LA", "1"):
        raise UnsupportedFormat(f"PNG mode {im.mode!r} is not supported")
    if im.mode == "1":
        return np.asarray(im.convert("L"), dtype=np.uint8).copy()
    if im.mode == "LA":
        return np.asarray(im, dtype=np.uint8)[..., 0].copy()
    warnings.warn("color PNG converted to luminance", ColorConversionWarning, stacklevel=3)
    return luminance(np.asarray(im.convert("RGB"), dtype=np.uint8))


def read_image(path) -> np.ndarray:
    """Load a gray image from a PGM, PPM or PNG file."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] in (b"P5", b"P6"):
        return _parse_pnm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _read_png(data)
    raise UnsupportedFormat(f"{os.fspath(path)}: not a binary PGM/PPM or PNG file")


def write_image(img, path) -> None:
    """Write ``img`` as a binary PGM (P5, maxval 255)."""
    img = as_gray(img)
    height, width = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (width, height))
        fh.write(np.ascontiguousarray(img).tobytes())
