#!/usr/bin/env python
# Deriving the security key from a comparison image.
#
# The key is the order in which the comparison image's bit planes are read.
# It comes from the first row of pixels: each pixel mod 8, keeping only the
# first time each remainder appears.

import numpy as np

from msis import derive_key

row = np.array([[15, 23, 8, 1, 250, 4, 12, 5, 3, 6]], dtype=np.uint8)
print("pixels      ", row[0].tolist())
print("mod 8       ", (row[0] % 8).tolist())
print("key         ", derive_key(row))          # 70124536

# A flat first row does not give eight remainders; the scan carries on into
# the following rows, and anything never seen is appended in ascending order.
flat = np.full((3, 4), 200, dtype=np.uint8)
flat[2, :] = [1, 3, 5, 7]
print("flat image  ", derive_key(flat))          # 01357246

# The key only depends on pixel values mod 8.
rng = np.random.default_rng(1)
img = rng.integers(0, 248, (32, 32), dtype=np.uint8)
print("shift by 8  ", derive_key(img) == derive_key(img + 8))
