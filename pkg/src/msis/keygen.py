"""Security key derivation from the comparison image."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitcore import as_gray

__all__ = ["SecurityKey", "derive_key"]


@dataclass(frozen=True)
class SecurityKey:
    """Order in which the comparison image's bit planes are read.

    ``order`` is a permutation of ``0..7``; ``str(key)`` gives the usual
    eight-digit form such as ``"70452316"``.
    """

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(d) for d in self.order)
        if sorted(order) != list(range(8)):
            raise ValueError(f"security key must be a permutation of 0..7, got {order}")
        object.__setattr__(self, "order", order)

    def __str__(self) -> str:
        return "".join(map(str, self.order))

    def __iter__(self):
        return iter(self.order)

    @classmethod
    def parse(cls, digits: str) -> "SecurityKey":
        return cls(tuple(int(c) for c in digits.strip()))


def derive_key(comparison) -> SecurityKey:
    """Collect distinct ``pixel % 8`` remainders in scan order.

    The first row is scanned left to right and the first occurrence of each
    remainder is kept. Rows below are scanned (row-major) only if the first
    row does not produce all eight; remainders the whole image never produces
    are appended in ascending order, so the result is always a permutation.
    """
    remainders = as_gray(comparison).ravel() % 8
    _, first_seen = np.unique(remainders, return_index=True)
    seen = remainders[np.sort(first_seen)].tolist()
    missing = [d for d in range(8) if d not in seen]
    return SecurityKey(tuple(seen + missing))
