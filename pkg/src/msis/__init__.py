"""(n, n/8) multi-secret image sharing.

Eight secret gray images are XOR-encrypted with a pad drawn from an
out-of-band comparison image and packed into a single gray share; the
comparison image alone recovers all eight losslessly.
"""

from .bitcore import (
    bits_to_pixels,
    extract_plane,
    fit_length,
    flatten_square,
    pixels_to_bits,
    reshape_square,
    xor_streams,
)
from .codec import (
    SecretGroup,
    ShareContainer,
    build_pad,
    decode_batch,
    decode_group,
    decrypt_image,
    encode_batch,
    encode_group,
    encrypt_image,
    pack_group,
    sharing_capacity,
    unpack_group,
)
from .errors import ClearTailWarning, ColorConversionWarning, MSISError
from .keygen import SecurityKey, derive_key
from .metrics import QualityReport, compare, entropy, psnr, rmse, ssim
from .shareio import read_image, read_share, write_image, write_share

__version__ = "0.1.0"
