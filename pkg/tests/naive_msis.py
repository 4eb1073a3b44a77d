"""Bit-at-a-time reference for key derivation, encryption and decryption.

Deliberately written with plain lists and loops, step for step, without
touching numpy or the msis package, so it can act as an independent check
of the vectorised codec. Images are lists of rows of ints.
"""

import struct


def key_from_image(rows):
    key = []
    for row in rows:
        for pixel in row:
            r = pixel % 8
            if r not in key:
                key.append(r)
            if len(key) == 8:
                return key
    for r in range(8):
        if r not in key:
            key.append(r)
    return key


def pad_stream(comparison, key, target):
    l1 = []
    for layer in key:
        for row in comparison:
            for pixel in row:
                l1.append((pixel // (2 ** layer)) % 2)
    if len(l1) > target:
        l1 = l1[:target]
    while len(l1) < target:
        l1.append(0)
    return l1


def pixel_stream(image):
    l2 = []
    for row in image:
        for pixel in row:
            for weight in (128, 64, 32, 16, 8, 4, 2, 1):
                l2.append(1 if pixel & weight else 0)
    return l2


def side_for(length):
    side = 1
    while side * side < length:
        side += 1
    return side


def encrypt(image, comparison):
    key = key_from_image(comparison)
    l2 = pixel_stream(image)
    l1 = pad_stream(comparison, key, len(l2))
    l3 = [a ^ b for a, b in zip(l1, l2)]
    side = side_for(len(l3))
    square = [[0] * side for _ in range(side)]
    for i, bit in enumerate(l3):
        square[i // side][i % side] = bit
    return square


def encode(images, comparison):
    """Share pixels (rows) for exactly eight equally sized images."""
    planes = [encrypt(img, comparison) for img in images]
    side = len(planes[0])
    share = [[0] * side for _ in range(side)]
    for r in range(side):
        for c in range(side):
            value = 0
            for plane in planes:
                value = value * 2 + plane[r][c]
            share[r][c] = value
    return share


def decode(share, comparison, width, height):
    key = key_from_image(comparison)
    side = len(share)
    length = 8 * width * height
    l1 = pad_stream(comparison, key, length)
    out = []
    for i in range(8):
        l5 = []
        for r in range(side):
            for c in range(side):
                l5.append((share[r][c] >> (7 - i)) & 1)
        l6 = [a ^ b for a, b in zip(l5[:length], l1)]
        pixels = []
        for p in range(width * height):
            value = 0
            for bit in l6[8 * p : 8 * p + 8]:
                value = value * 2 + bit
            pixels.append(value)
        out.append([pixels[r * width : (r + 1) * width] for r in range(height)])
    return out


def container_bytes(share, width, height, num_real):
    length = 8 * width * height
    side = len(share)
    header = (
        b"MS18"
        + struct.pack("<H", 1)
        + struct.pack("<H", 0)
        + struct.pack("<I", width)
        + struct.pack("<I", height)
        + bytes([num_real])
        + b"\x00" * 7
        + struct.pack("<Q", length)
        + struct.pack("<I", side)
    )
    return header + bytes(v for row in share for v in row)
