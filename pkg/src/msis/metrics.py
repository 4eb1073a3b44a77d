"""Recovery quality (SSIM, PSNR, RMSE) and share randomness measures.

SSIM here is the global, single-window form: means, variances and the
covariance are taken over the whole image, with the usual constants
``C1 = (0.01 * 255)**2`` and ``C2 = (0.03 * 255)**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitcore import as_gray
from .errors import DimensionMismatch

__all__ = [
    "QualityReport",
    "rmse",
    "psnr",
    "ssim",
    "entropy",
    "histogram",
    "plane_balance",
    "compare",
]

PEAK = 255.0
C1 = (0.01 * PEAK) ** 2
C2 = (0.03 * PEAK) ** 2


@dataclass(frozen=True)
class QualityReport:
    ssim: float
    psnr: float
    rmse: float

    @property
    def identical(self) -> bool:
        return self.rmse == 0.0

    def row(self) -> str:
        """Table formatting: SSIM to 2 decimals, ``Inf`` PSNR, bare ``0`` RMSE."""
        psnr = "Inf" if math.isinf(self.psnr) else f"{self.psnr:.2f}"
        rmse = "0" if self.rmse == 0 else f"{self.rmse:.4f}"
        return f"{self.ssim:.2f} {psnr} {rmse}"


def _pair(a, b):
    a, b = as_gray(a), as_gray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"images differ in size: {a.shape} vs {b.shape}")
    return a.astype(np.float64), b.astype(np.float64)


def _mse(a, b) -> float:
    return float(np.mean((a - b) ** 2))


def rmse(a, b) -> float:
    return math.sqrt(_mse(*_pair(a, b)))


def psnr(a, b) -> float:
    mse = _mse(*_pair(a, b))
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / mse)


def ssim(a, b) -> float:
    a, b = _pair(a, b)
    mu_a, mu_b = a.mean(), b.mean()
    da, db = a - mu_a, b - mu_b
    var_a, var_b = np.mean(da * da), np.mean(db * db)
    cov = np.mean(da * db)
    num = (2 * mu_a * mu_b + C1) * (2 * cov + C2)
    den = (mu_a**2 + mu_b**2 + C1) * (var_a + var_b + C2)
    return float(num / den)


def histogram(img) -> np.ndarray:
    """256-bin pixel count histogram."""
    return np.bincount(as_gray(img).ravel(), minlength=256)


def entropy(img) -> float:
    """Shannon entropy of the pixel histogram in bits per pixel, in [0, 8]."""
    counts = histogram(img)
    p = counts[counts > 0] / counts.sum()
    return float(max(0.0, -np.sum(p * np.log2(p))))


def plane_balance(img) -> np.ndarray:
    """Fraction of ones in each bit plane, index 7 = MSB plane."""
    img = as_gray(img).ravel()
    return np.array([np.mean((img >> d) & 1) for d in range(8)])


def compare(original, recovered) -> QualityReport:
    return QualityReport(ssim(original, recovered), psnr(original, recovered), rmse(original, recovered))
