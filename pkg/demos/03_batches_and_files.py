#!/usr/bin/env python
# Batches of arbitrary size, share files, and the capacity gain.
#
# n secrets become ceil(n/8) shares; the last group is filled with null
# images, which are dropped again on decode.

import math
import tempfile
from pathlib import Path

import numpy as np

from msis import decode_batch, encode_batch, read_share, sharing_capacity, write_share

rng = np.random.default_rng(7)
comparison = rng.integers(0, 256, (96, 96), dtype=np.uint8)

for n in (1, 8, 9, 16, 17, 64):
    secrets = [rng.integers(0, 256, (32, 32), dtype=np.uint8) for _ in range(n)]
    containers = encode_batch(secrets, comparison)
    assert len(containers) == math.ceil(n / 8)
    print(f"n={n:3d}: {len(containers)} share(s), num_real={[c.num_real for c in containers]}, "
          f"capacity {sharing_capacity(n):.2f}")

# Share files: 36-byte header plus the share pixels, nothing else.
with tempfile.TemporaryDirectory() as d:
    paths = []
    for i, c in enumerate(containers):
        path = Path(d) / f"batch_{i:04d}.msis"
        size = write_share(c, path)
        paths.append(path)
    print(f"\n{len(paths)} files of {size} bytes "
          f"(36 + {containers[0].share_side}**2)")
    back = decode_batch([read_share(p) for p in paths], comparison)
    print("all recovered:", all(np.array_equal(a, b) for a, b in zip(secrets, back)))
