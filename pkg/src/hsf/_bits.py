"""Bitmask helpers shared by the truth-table modules.

Convention used everywhere in this package: variables are 0-based, bit j of a
row index corresponds to variable j, and a set bit means the variable takes the
value -1.  Variable sets are plain Python ints read as bitmasks, so the parity
function of a set S evaluates to (-1)**popcount(k & S) at row k.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np


def popcount(mask: int) -> int:
    """Number of set bits of a nonnegative int."""
    return int(mask).bit_count()


def bit_positions(mask: int) -> list[int]:
    """Set-bit positions of ``mask`` in ascending order."""
    return [j for j in range(int(mask).bit_length()) if (mask >> j) & 1]


def popcounts(n: int) -> np.ndarray:
    """Popcount of every index in [0, 2**n), as a uint8 array."""
    idx = np.arange(1 << n, dtype=np.uint32)
    counts = np.zeros(1 << n, dtype=np.uint8)
    for j in range(n):
        counts += ((idx >> j) & 1).astype(np.uint8)
    return counts


def compress_bits(idx: np.ndarray | int, positions: Sequence[int]) -> np.ndarray | int:
    """Gather the bits of ``idx`` at ``positions`` into consecutive low bits."""
    out = idx * 0
    for j, p in enumerate(positions):
        out = out | (((idx >> p) & 1) << j)
    return out


def spread_bits(packed: np.ndarray | int, positions: Sequence[int]) -> np.ndarray | int:
    """Scatter the low bits of ``packed`` to ``positions`` (inverse of compress_bits)."""
    out = packed * 0
    for j, p in enumerate(positions):
        out = out | (((packed >> j) & 1) << p)
    return out


def submasks(mask: int) -> np.ndarray:
    """All 2**popcount(mask) submasks of ``mask``, ordered by packed index."""
    pos = bit_positions(mask)
    packed = np.arange(1 << len(pos), dtype=np.int64)
    return np.asarray(spread_bits(packed, pos), dtype=np.int64)
