"""Encrypting groups of eight secrets into one gray share, and back.

Every secret of a group is XOR-ed with the same pad: the comparison image's
bit planes read in security-key order and fitted to ``8 * W * H`` bits. The
resulting streams are laid out as square binary images and stacked into the
bits of one gray share, secret 0 in the most significant bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .bitcore import (
    as_gray,
    bits_to_pixels,
    extract_plane,
    fit_length,
    flatten_square,
    pixels_to_bits,
    reshape_square,
    square_side,
    xor_streams,
)
from .errors import (
    ClearTailWarning,
    DimensionInconsistency,
    DimensionMismatch,
    EmptyInput,
    LengthMismatch,
    MalformedContainer,
    NotSquare,
    SideMismatch,
)
from .keygen import SecurityKey, derive_key

__all__ = [
    "GROUP_SIZE",
    "SecretGroup",
    "ShareContainer",
    "build_pad",
    "encrypt_image",
    "decrypt_image",
    "pack_group",
    "unpack_group",
    "encode_group",
    "decode_group",
    "encode_batch",
    "decode_batch",
    "sharing_capacity",
]

GROUP_SIZE = 8


@dataclass(eq=False)
class SecretGroup:
    """Eight equally sized secrets; entries past ``num_real`` are null images."""

    images: list[np.ndarray]
    num_real: int = GROUP_SIZE

    def __post_init__(self):
        self.images = [as_gray(img) for img in self.images]
        if len(self.images) != GROUP_SIZE:
            raise ValueError(f"a group holds exactly {GROUP_SIZE} images, got {len(self.images)}")
        if not 1 <= self.num_real <= GROUP_SIZE:
            raise ValueError(f"num_real must be in [1, {GROUP_SIZE}], got {self.num_real}")
        shapes = {img.shape for img in self.images}
        if len(shapes) != 1:
            raise DimensionMismatch(f"secrets of a group differ in size: {sorted(shapes)}")
        if any(img.any() for img in self.images[self.num_real:]):
            raise ValueError("padding images past num_real must be all zero")

    @classmethod
    def from_images(cls, images) -> "SecretGroup":
        """Build a group from 1 to 8 secrets, filling the rest with null images."""
        images = [as_gray(img) for img in images]
        if not images:
            raise EmptyInput("a group needs at least one secret image")
        if len(images) > GROUP_SIZE:
            raise ValueError(f"at most {GROUP_SIZE} secrets fit in one group")
        _check_same_size(images)
        null = np.zeros_like(images[0])
        padded = images + [null] * (GROUP_SIZE - len(images))
        return cls(padded, num_real=len(images))

    @property
    def width(self) -> int:
        return self.images[0].shape[1]

    @property
    def height(self) -> int:
        return self.images[0].shape[0]

    @property
    def secrets(self) -> list[np.ndarray]:
        return self.images[: self.num_real]

    def __eq__(self, other):
        if not isinstance(other, SecretGroup):
            return NotImplemented
        return self.num_real == other.num_real and all(
            np.array_equal(a, b) for a, b in zip(self.images, other.images)
        )


@dataclass(eq=False)
class ShareContainer:
    """The transmitted artifact: one square gray share plus what is needed
    to cut the secrets back out of it. Never holds the key or comparison image."""

    secret_width: int
    secret_height: int
    num_real: int
    share: np.ndarray = field(repr=False)

    @property
    def bit_length(self) -> int:
        return 8 * self.secret_width * self.secret_height

    @property
    def share_side(self) -> int:
        return self.share.shape[0]

    def validate(self) -> "ShareContainer":
        if self.secret_width < 1 or self.secret_height < 1:
            raise MalformedContainer("secret dimensions must be positive")
        if not 1 <= self.num_real <= GROUP_SIZE:
            raise MalformedContainer(f"num_real must be in [1, {GROUP_SIZE}], got {self.num_real}")
        share = np.asarray(self.share)
        if share.ndim != 2 or share.dtype != np.uint8:
            raise MalformedContainer("share must be a 2-D uint8 image")
        if share.shape[0] != share.shape[1]:
            raise DimensionInconsistency(f"share is not square: {share.shape}")
        expected = square_side(self.bit_length)
        if share.shape[0] != expected:
            raise DimensionInconsistency(
                f"{self.secret_width}x{self.secret_height} secrets need a "
                f"{expected}x{expected} share, got {share.shape[0]}x{share.shape[1]}"
            )
        return self

    def __eq__(self, other):
        if not isinstance(other, ShareContainer):
            return NotImplemented
        return (
            (self.secret_width, self.secret_height, self.num_real)
            == (other.secret_width, other.secret_height, other.num_real)
            and np.array_equal(self.share, other.share)
        )


def _check_same_size(images):
    shapes = {img.shape for img in images}
    if len(shapes) > 1:
        raise DimensionMismatch(
            "all secret images must share one size, got "
            + ", ".join(f"{w}x{h}" for h, w in sorted(shapes))
        )


def build_pad(comparison, key: SecurityKey, target: int) -> np.ndarray:
    """Key-ordered bit planes of the comparison image, fitted to ``target`` bits."""
    comparison = as_gray(comparison)
    planes = [extract_plane(comparison, plane) for plane in key.order]
    return fit_length(np.concatenate(planes), target)


def encrypt_image(secret, pad) -> np.ndarray:
    """XOR the secret's bit stream with ``pad`` and lay it out as a square."""
    return reshape_square(xor_streams(pad, pixels_to_bits(secret)))


def decrypt_image(plane, pad, width: int, height: int) -> np.ndarray:
    pad = np.asarray(pad)
    if pad.size != 8 * width * height:
        raise LengthMismatch(f"pad of {pad.size} bits does not match a {width}x{height} secret")
    stream = flatten_square(plane, pad.size)
    return bits_to_pixels(xor_streams(stream, pad), width, height)


def pack_group(planes) -> np.ndarray:
    """Stack eight binary images into one gray image; plane 0 becomes the MSB."""
    planes = [np.asarray(p, dtype=np.uint8) for p in planes]
    if len(planes) != GROUP_SIZE:
        raise ValueError(f"expected {GROUP_SIZE} binary images, got {len(planes)}")
    if len({p.shape for p in planes}) != 1:
        raise SideMismatch("binary images of a group must have identical sides")
    return np.packbits(np.stack(planes), axis=0)[0]


def unpack_group(share) -> list[np.ndarray]:
    share = as_gray(share)
    if share.shape[0] != share.shape[1]:
        raise NotSquare(f"share image must be square, got {share.shape[1]}x{share.shape[0]}")
    return list(np.unpackbits(share[np.newaxis], axis=0))


def encode_group(group: SecretGroup, comparison) -> ShareContainer:
    comparison = as_gray(comparison)
    bit_length = 8 * group.width * group.height
    if 8 * comparison.size < bit_length:
        warnings.warn(
            f"comparison image provides {8 * comparison.size} pad bits but "
            f"{bit_length} are needed; the last "
            f"{bit_length - 8 * comparison.size} bits of every secret are sent in the clear",
            ClearTailWarning,
            stacklevel=2,
        )
    key = derive_key(comparison)
    pad = build_pad(comparison, key, bit_length)
    planes = [encrypt_image(img, pad) for img in group.images]
    return ShareContainer(group.width, group.height, group.num_real, pack_group(planes))


def decode_group(container: ShareContainer, comparison) -> SecretGroup:
    """Recover the group packed in ``container``.

    A different comparison image than the one used for encoding cannot be
    detected; it silently yields garbage.
    """
    container.validate()
    comparison = as_gray(comparison)
    width, height = container.secret_width, container.secret_height
    pad = build_pad(comparison, derive_key(comparison), container.bit_length)
    images = [decrypt_image(plane, pad, width, height) for plane in unpack_group(container.share)]
    # null images come back exactly as zeros, but don't trust the share for it
    null = np.zeros((height, width), dtype=np.uint8)
    images[container.num_real:] = [null] * (GROUP_SIZE - container.num_real)
    return SecretGroup(images, num_real=container.num_real)


def encode_batch(secrets, comparison) -> list[ShareContainer]:
    """Encode ``n`` secrets into ``ceil(n / 8)`` containers, in input order."""
    secrets = [as_gray(img) for img in secrets]
    if not secrets:
        raise EmptyInput("no secret images given")
    _check_same_size(secrets)
    comparison = as_gray(comparison)
    groups = [
        SecretGroup.from_images(secrets[i : i + GROUP_SIZE])
        for i in range(0, len(secrets), GROUP_SIZE)
    ]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        containers = [encode_group(g, comparison) for g in groups]
    # the clear-tail warning depends only on sizes, report it once per batch
    seen = set()
    for w in caught:
        msg = str(w.message)
        if (w.category, msg) not in seen:
            seen.add((w.category, msg))
            warnings.warn(w.message, stacklevel=2)
    return containers


def decode_batch(containers, comparison) -> list[np.ndarray]:
    out = []
    for container in containers:
        out.extend(decode_group(container, comparison).secrets)
    return out


def sharing_capacity(n: int) -> float:
    """Secrets carried per transmitted share for a batch of ``n`` secrets."""
    if n < 1:
        raise EmptyInput("n must be at least 1")
    return n / math.ceil(n / GROUP_SIZE)
