"""Binary filter file format.

Layout (little-endian)::

    magic      4s   b"DLBF"
    version    u8   0x01
    scheme     u8   hash-scheme id (0x01)
    m, r, k    u32 x 3
    seed       u64
    bitmap     ceil(r / 8) bytes
    data       ceil((m - r) / 8) bytes

Bits are packed least-significant-bit first within each byte.
"""

from __future__ import annotations

import struct

from .bitarray import BitArray
from .errors import (
    BadMagicError,
    DimensionMismatchError,
    InvalidParamsError,
    TruncatedPayloadError,
    UnknownHashSchemeError,
    VersionMismatchError,
)
from .filters import DeletableBloomFilter, FilterParams
from .hashing import HASH_SCHEME_ID

MAGIC = b"DLBF"
VERSION = 1
_HEADER = struct.Struct("<4sBBIIIQ")
HEADER_SIZE = _HEADER.size


def payload_size(params: FilterParams) -> int:
    return HEADER_SIZE + (params.r + 7) // 8 + (params.m_prime + 7) // 8


def serialize(dlbf: DeletableBloomFilter) -> bytes:
    p = dlbf.params
    header = _HEADER.pack(MAGIC, VERSION, HASH_SCHEME_ID, p.m, p.r, p.k, p.seed)
    return header + dlbf.collision_bitmap.to_bytes() + dlbf.data_bits.to_bytes()


def deserialize(payload: bytes) -> DeletableBloomFilter:
    payload = bytes(payload)
    if len(payload) < 4 or payload[:4] != MAGIC:
        raise BadMagicError(f"bad magic {payload[:4]!r}, expected {MAGIC!r}")
    if len(payload) < HEADER_SIZE:
        raise TruncatedPayloadError(f"header needs {HEADER_SIZE} bytes, got {len(payload)}")
    _, version, scheme, m, r, k, seed = _HEADER.unpack_from(payload)
    if version != VERSION:
        raise VersionMismatchError(f"unsupported version {version}, expected {VERSION}")
    if scheme != HASH_SCHEME_ID:
        raise UnknownHashSchemeError(f"unknown hash scheme id {scheme}")
    try:
        params = FilterParams(m=m, r=r, k=k, seed=seed)
    except InvalidParamsError as exc:
        raise DimensionMismatchError(f"header dimensions are invalid: {exc}") from None

    expected = payload_size(params)
    if len(payload) < expected:
        raise TruncatedPayloadError(f"payload is {len(payload)} bytes, expected {expected}")
    if len(payload) > expected:
        raise DimensionMismatchError(
            f"payload is {len(payload)} bytes, {len(payload) - expected} more than m, r imply"
        )

    split = HEADER_SIZE + (r + 7) // 8
    try:
        bitmap = BitArray.from_bytes(r, payload[HEADER_SIZE:split])
        data = BitArray.from_bytes(params.m_prime, payload[split:])
    except ValueError as exc:
        raise DimensionMismatchError(str(exc)) from None

    dlbf = DeletableBloomFilter(params)
    dlbf.collision_bitmap = bitmap
    dlbf.data_bits = data
    return dlbf
