"""Conversions between gray images, bit planes and flat bit streams.

Representations used throughout the package:

* gray image  -- 2-D ``uint8`` array of shape ``(height, width)``
* bit stream  -- 1-D ``uint8`` array holding only 0 and 1; its length is ``.size``
* binary image -- square 2-D ``uint8`` array of 0/1

All traversals are row-major and pixels are expanded most-significant bit
first. Bit plane ``d`` is the plane of weight ``2**d`` (plane 7 is the MSB).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EmptyStream, InvalidImage, InvalidPlane, LengthMismatch

__all__ = [
    "as_gray",
    "as_bits",
    "pixels_to_bits",
    "bits_to_pixels",
    "extract_plane",
    "xor_streams",
    "fit_length",
    "square_side",
    "reshape_square",
    "flatten_square",
]


def as_gray(img) -> np.ndarray:
    """Validate ``img`` as a gray image and return it as a ``uint8`` array.

    Integer arrays of another dtype are accepted if every value fits in
    ``[0, 255]``.
    """
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidImage(f"expected a non-empty 2-D image, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if not (np.issubdtype(arr.dtype, np.integer) or arr.dtype == np.bool_):
        raise InvalidImage(f"pixels must be integers, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise InvalidImage("pixel values must lie in [0, 255]")
    return arr.astype(np.uint8)


def as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size and ((arr != 0) & (arr != 1)).any():
        raise ValueError("bit stream may contain only 0 and 1")
    return arr.astype(np.uint8, copy=False)


def pixels_to_bits(img) -> np.ndarray:
    """Expand every pixel into 8 bits, MSB first, pixels in row-major order."""
    return np.unpackbits(as_gray(img).ravel())


def bits_to_pixels(bits, width: int, height: int) -> np.ndarray:
    bits = as_bits(bits)
    if bits.size != 8 * width * height:
        raise LengthMismatch(
            f"{bits.size} bits cannot fill a {width}x{height} image "
            f"({8 * width * height} bits needed)"
        )
    return np.packbits(bits).reshape(height, width)


def extract_plane(img, plane: int) -> np.ndarray:
    """Bit ``plane`` of every pixel, row-major. Plane 7 is the MSB."""
    if not isinstance(plane, (int, np.integer)) or not 0 <= plane <= 7:
        raise InvalidPlane(f"bit plane must be in [0, 7], got {plane!r}")
    return (as_gray(img).ravel() >> np.uint8(plane)) & np.uint8(1)


def xor_streams(a, b) -> np.ndarray:
    a, b = as_bits(a), as_bits(b)
    if a.size != b.size:
        raise LengthMismatch(f"cannot XOR streams of length {a.size} and {b.size}")
    return np.bitwise_xor(a, b)


def fit_length(bits, target: int) -> np.ndarray:
    """Truncate to the first ``target`` bits, or zero-pad the tail up to it."""
    if target < 0:
        raise ValueError("target length must be non-negative")
    bits = as_bits(bits)
    if bits.size >= target:
        return bits[:target]
    out = np.zeros(target, dtype=np.uint8)
    out[: bits.size] = bits
    return out


def square_side(length: int) -> int:
    """Side of the smallest square holding ``length`` cells."""
    return math.isqrt(length - 1) + 1 if length > 0 else 0


def reshape_square(bits) -> np.ndarray:
    bits = as_bits(bits)
    if bits.size == 0:
        raise EmptyStream("cannot lay out an empty stream as a square image")
    side = square_side(bits.size)
    grid = np.zeros(side * side, dtype=np.uint8)
    grid[: bits.size] = bits
    return grid.reshape(side, side)


def flatten_square(binary, bit_length: int) -> np.ndarray:
    binary = np.asarray(binary)
    if binary.ndim != 2 or binary.shape[0] != binary.shape[1]:
        raise ValueError(f"expected a square binary image, got shape {binary.shape}")
    if bit_length > binary.size:
        raise LengthMismatch(
            f"a {binary.shape[0]}x{binary.shape[1]} image holds at most "
            f"{binary.size} bits, {bit_length} requested"
        )
    return as_bits(binary.ravel()[:bit_length])
