"""Deletable Bloom filter and the standard Bloom filter baseline."""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

from .bitarray import BitArray
from .errors import InvalidParamsError, RegionCountWarning
from .hashing import Element, index_set

_U32 = (1 << 32) - 1
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class FilterParams:
    """Dimensions of a deletable Bloom filter.

    ``m`` bits in total, of which ``r`` form the collision bitmap; the
    remaining ``m - r`` data bits are split into ``r`` regions of
    ``ceil((m - r) / r)`` bits (the last region may be shorter).
    """

    m: int
    r: int
    k: int
    seed: int = 0

    def __post_init__(self):
        for name in ("m", "r", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidParamsError(f"{name} must be an int, got {value!r}")
            if value > _U32:
                raise InvalidParamsError(f"{name}={value} does not fit in 32 bits")
        if not 0 <= self.seed <= _U64:
            raise InvalidParamsError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.k < 1:
            raise InvalidParamsError(f"k must be >= 1, got k={self.k}")
        if self.r < 1:
            raise InvalidParamsError(f"r must be >= 1, got r={self.r}")
        if self.r >= self.m:
            raise InvalidParamsError(f"r must be < m, got r={self.r}, m={self.m}")
        if self.m_prime < self.r:
            raise InvalidParamsError(
                f"m' = m - r = {self.m_prime} must be >= r = {self.r} so every region is nonempty"
            )
        if self.r < self.k:
            warnings.warn(
                f"r={self.r} < k={self.k}: deletability model assumes r >= k",
                RegionCountWarning,
                stacklevel=3,
            )

    @property
    def m_prime(self) -> int:
        return self.m - self.r

    @property
    def cell_width(self) -> int:
        return -(-self.m_prime // self.r)


def region_of(index: int, params: FilterParams) -> int:
    if not 0 <= index < params.m_prime:
        raise IndexError(f"index {index} out of range [0, {params.m_prime})")
    return index // params.cell_width


class RemoveOutcome(enum.Enum):
    DELETED = "Deleted"
    NOT_DELETABLE = "NotDeletable"
    NOT_PRESENT = "NotPresent"

    def __str__(self) -> str:
        return self.value


class DeletableBloomFilter:
    """Bloom filter that records collided regions so elements can be removed.

    Inserting sets the element's bits and marks the region of every bit that
    was already set. Removing clears only bits in unmarked regions; since
    those bits were set exactly once, no other element loses a bit and no
    false negative is introduced. Marked regions are never unmarked.
    """

    def __init__(self, params: FilterParams):
        self.params = params
        self.collision_bitmap = BitArray(params.r)
        self.data_bits = BitArray(params.m_prime)

    def indices(self, element: Element) -> list[int]:
        p = self.params
        return index_set(element, p.seed, p.m_prime, p.k)

    def region_of(self, index: int) -> int:
        return region_of(index, self.params)

    def insert(self, element: Element) -> None:
        self.insert_at(self.indices(element))

    def insert_at(self, indices: list[int]) -> None:
        """Insert by precomputed indices (as returned by :meth:`indices`)."""
        w = self.params.cell_width
        for i in indices:
            if self.data_bits.set(i):
                self.collision_bitmap.set(i // w)

    def query(self, element: Element) -> bool:
        return self.query_at(self.indices(element))

    def query_at(self, indices: list[int]) -> bool:
        return self.data_bits.all_set(indices)

    __contains__ = query

    def is_deletable(self, element: Element) -> bool:
        """True when ``element`` is present and has a bit in a collision-free region."""
        idx = self.indices(element)
        if not self.data_bits.all_set(idx):
            return False
        w = self.params.cell_width
        return any(not self.collision_bitmap[i // w] for i in idx)

    def remove(self, element: Element) -> RemoveOutcome:
        return self.remove_at(self.indices(element))

    def remove_at(self, idx: list[int]) -> RemoveOutcome:
        bits = self.data_bits
        if not bits.all_set(idx):
            return RemoveOutcome.NOT_PRESENT
        w = self.params.cell_width
        cleared = 0
        for i in idx:
            if not self.collision_bitmap[i // w] and bits.clear(i):
                cleared += 1
        return RemoveOutcome.DELETED if cleared else RemoveOutcome.NOT_DELETABLE

    def bit_counts(self) -> tuple[int, int]:
        """(data bits set, collision-bitmap bits set)."""
        return self.data_bits.popcount(), self.collision_bitmap.popcount()

    def copy(self) -> DeletableBloomFilter:
        other = DeletableBloomFilter.__new__(DeletableBloomFilter)
        other.params = self.params
        other.collision_bitmap = self.collision_bitmap.copy()
        other.data_bits = self.data_bits.copy()
        return other

    def to_bytes(self) -> bytes:
        from .serialization import serialize

        return serialize(self)

    @classmethod
    def from_bytes(cls, payload: bytes) -> DeletableBloomFilter:
        from .serialization import deserialize

        return deserialize(payload)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeletableBloomFilter):
            return NotImplemented
        return (
            self.params == other.params
            and self.collision_bitmap == other.collision_bitmap
            and self.data_bits == other.data_bits
        )

    def __repr__(self) -> str:
        p = self.params
        data, marked = self.bit_counts()
        return (
            f"DeletableBloomFilter(m={p.m}, r={p.r}, k={p.k}, seed={p.seed}, "
            f"data_set={data}, regions_marked={marked})"
        )


class StandardBloomFilter:
    """Plain insert-only Bloom filter over ``m`` bits, same index derivation."""

    def __init__(self, m: int, k: int, seed: int = 0):
        if m < 1:
            raise InvalidParamsError(f"m must be >= 1, got m={m}")
        if k < 1:
            raise InvalidParamsError(f"k must be >= 1, got k={k}")
        self.m = m
        self.k = k
        self.seed = seed
        self.bits = BitArray(m)

    def indices(self, element: Element) -> list[int]:
        return index_set(element, self.seed, self.m, self.k)

    def insert(self, element: Element) -> None:
        self.insert_at(self.indices(element))

    def insert_at(self, indices: list[int]) -> None:
        for i in indices:
            self.bits.set(i)

    def query(self, element: Element) -> bool:
        return self.query_at(self.indices(element))

    def query_at(self, indices: list[int]) -> bool:
        return self.bits.all_set(indices)

    __contains__ = query

    def __repr__(self) -> str:
        return f"StandardBloomFilter(m={self.m}, k={self.k}, seed={self.seed}, set={self.bits.popcount()})"
