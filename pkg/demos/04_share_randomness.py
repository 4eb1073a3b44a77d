#!/usr/bin/env python
# How random does a share look, and where does the scheme leak?

import warnings

import numpy as np

from msis import ClearTailWarning, SecretGroup, encode_group, entropy, pixels_to_bits, unpack_group
from msis.bitcore import flatten_square
from msis.metrics import plane_balance

rng = np.random.default_rng(11)
yy, xx = np.mgrid[0:64, 0:64]
secrets = [((xx * (i + 1) + yy) % 256).astype(np.uint8) for i in range(8)]
comparison = rng.integers(0, 256, (128, 128), dtype=np.uint8)

container = encode_group(SecretGroup(secrets), comparison)
# These secrets are strongly correlated with each other. Every plane uses the
# same pad, so the share's pixel histogram stays well below 8 bits.
print(f"secret entropy  : {np.mean([entropy(s) for s in secrets]):.3f} bits/pixel (mean)")
print(f"share entropy   : {entropy(container.share):.3f} bits/pixel")
print("ones per plane  :", np.round(plane_balance(container.share)[::-1], 3))

# Fraction of share bits equal to the secret bits; close to 0.5 means the
# plane on its own says little about the secret.
for i, (secret, plane) in enumerate(zip(secrets, unpack_group(container.share))):
    stream = pixels_to_bits(secret)
    agree = np.mean(flatten_square(plane, stream.size) == stream)
    print(f"plane {i} agreement: {agree:.4f}")

# All eight secrets share one pad, so XOR of two planes cancels it and
# gives XOR of the two secrets directly.
p = unpack_group(container.share)
leak = np.array_equal(
    flatten_square(p[0] ^ p[1], container.bit_length),
    pixels_to_bits(secrets[0]) ^ pixels_to_bits(secrets[1]),
)
print(f"\nplane0 ^ plane1 == secret0 ^ secret1: {leak}")

# A comparison image that is too small leaves the tail of every secret in the clear.
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    encode_group(SecretGroup(secrets), comparison[:32, :32])
for w in caught:
    if issubclass(w.category, ClearTailWarning):
        print("warning:", w.message)
