#!/usr/bin/env python
# Hiding eight secret images in one gray share and getting them back.
#
# Secrets and comparison image are synthetic here; any same-sized 8-bit
# gray images work. The comparison image is agreed out of band and is
# never written to the share.

import numpy as np

from msis import SecretGroup, compare, decode_group, encode_group, entropy

h = w = 64
yy, xx = np.mgrid[0:h, 0:w]
secrets = [
    ((xx + yy) * 2).astype(np.uint8),                      # diagonal ramp
    (xx * 4).astype(np.uint8),                             # horizontal ramp
    ((xx // 8 + yy // 8) % 2 * 255).astype(np.uint8),      # checkerboard
    (255 * ((xx - 32) ** 2 + (yy - 32) ** 2 < 400)).astype(np.uint8),  # disc
    np.full((h, w), 128, np.uint8),
    np.flipud((yy * 4).astype(np.uint8)),
    np.random.default_rng(0).integers(0, 256, (h, w), dtype=np.uint8),
    np.zeros((h, w), np.uint8),
]

comparison = np.random.default_rng(42).integers(0, 256, (128, 128), dtype=np.uint8)

container = encode_group(SecretGroup(secrets), comparison)
print(f"share: {container.share_side}x{container.share_side} pixels "
      f"for 8 secrets of {w}x{h}")
print(f"share entropy: {entropy(container.share):.3f} bits/pixel")

recovered = decode_group(container, comparison).images
print("\nimage  SSIM PSNR RMSE")
for i, (a, b) in enumerate(zip(secrets, recovered), start=1):
    print(f"F{i}     {compare(a, b).row()}")

# Without the right comparison image the same share decodes to noise.
wrong = np.random.default_rng(43).integers(0, 256, (128, 128), dtype=np.uint8)
garbage = decode_group(container, wrong).images
print(f"\nwrong comparison image, F1 PSNR: {compare(secrets[0], garbage[0]).psnr:.2f} dB")
