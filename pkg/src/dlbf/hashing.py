"""Seeded derivation of the k bit positions an element maps to.

Each element is hashed with BLAKE2b keyed by the 64-bit seed. Every 64-bit
little-endian word of the digest yields one index (``word % size``); a block
of 8 words covers up to 8 indices, and further blocks are produced by
re-hashing with the block number as salt.
"""

from __future__ import annotations

import hashlib
import struct
from typing import Union

Element = Union[bytes, str]

#: identifier written into serialized filters
HASH_SCHEME_ID = 1

_WORDS_PER_BLOCK = 8
_SEED_MASK = (1 << 64) - 1


def as_bytes(element: Element) -> bytes:
    if isinstance(element, str):
        return element.encode("utf-8")
    return bytes(element)


def index_set(element: Element, seed: int, size: int, k: int) -> list[int]:
    """Return ``k`` indices in ``[0, size)`` for ``element``; duplicates are possible."""
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    data = as_bytes(element)
    key = (seed & _SEED_MASK).to_bytes(8, "little")
    indices: list[int] = []
    block = 0
    while len(indices) < k:
        words = min(_WORDS_PER_BLOCK, k - len(indices))
        digest = hashlib.blake2b(
            data, digest_size=64, key=key, salt=block.to_bytes(16, "little")
        ).digest()
        indices.extend(w % size for w in struct.unpack_from(f"<{words}Q", digest))
        block += 1
    return indices
