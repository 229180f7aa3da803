"""Fixed-length packed bit array backed by a ``bytearray``.

Bit ``i`` lives in byte ``i // 8`` at offset ``i % 8`` (least significant
bit first), which is also the on-disk layout used by the filter file format.
"""

from __future__ import annotations


class BitArray:
    __slots__ = ("_length", "_data", "_count")

    def __init__(self, length: int):
        if length < 0:
            raise ValueError(f"length must be non-negative, got {length}")
        self._length = length
        self._data = bytearray((length + 7) // 8)
        self._count = 0

    @classmethod
    def from_bytes(cls, length: int, data: bytes) -> BitArray:
        """Build an array from packed bytes; padding bits past ``length`` must be zero."""
        nbytes = (length + 7) // 8
        if len(data) != nbytes:
            raise ValueError(f"expected {nbytes} bytes for {length} bits, got {len(data)}")
        tail = length % 8
        if tail and data[-1] >> tail:
            raise ValueError("padding bits beyond the array length are set")
        arr = cls(length)
        arr._data[:] = data
        arr._count = int.from_bytes(data, "little").bit_count()
        return arr

    def __len__(self) -> int:
        return self._length

    def _check(self, i: int) -> None:
        if not 0 <= i < self._length:
            raise IndexError(f"bit index {i} out of range [0, {self._length})")

    def __getitem__(self, i: int) -> bool:
        self._check(i)
        return bool(self._data[i >> 3] >> (i & 7) & 1)

    def set(self, i: int) -> bool:
        """Set bit ``i``; return its previous value."""
        self._check(i)
        mask = 1 << (i & 7)
        byte = self._data[i >> 3]
        if byte & mask:
            return True
        self._data[i >> 3] = byte | mask
        self._count += 1
        return False

    def clear(self, i: int) -> bool:
        """Clear bit ``i``; return its previous value."""
        self._check(i)
        mask = 1 << (i & 7)
        byte = self._data[i >> 3]
        if not byte & mask:
            return False
        self._data[i >> 3] = byte & ~mask
        self._count -= 1
        return True

    def all_set(self, indices) -> bool:
        """True when every bit in ``indices`` is set."""
        data = self._data
        n = self._length
        for i in indices:
            if not 0 <= i < n:
                raise IndexError(f"bit index {i} out of range [0, {n})")
            if not data[i >> 3] >> (i & 7) & 1:
                return False
        return True

    def popcount(self) -> int:
        return self._count

    def to_bytes(self) -> bytes:
        return bytes(self._data)

    def copy(self) -> BitArray:
        other = BitArray(self._length)
        other._data[:] = self._data
        other._count = self._count
        return other

    def __iter__(self):
        for i in range(self._length):
            yield self[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitArray):
            return NotImplemented
        return self._length == other._length and self._data == other._data

    def __repr__(self) -> str:
        return f"BitArray(length={self._length}, set={self._count})"
