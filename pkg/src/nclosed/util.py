"""Bitmask helpers and deterministic RNG derivation."""

from __future__ import annotations

import hashlib
import random
from typing import Iterator


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def derived_rng(seed: int, *context) -> random.Random:
    """Random stream derived stably from (seed, context).

    Uses sha256 rather than hash() so results do not depend on
    PYTHONHASHSEED; the same (seed, context) always yields the same stream,
    regardless of worker scheduling.
    """
    material = repr((seed,) + context).encode("utf-8")
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
