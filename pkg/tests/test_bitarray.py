import pytest
from hypothesis import given, strategies as st

from dlbf.bitarray import BitArray


def test_set_get_clear_single_bit():
    bits = BitArray(20)
    assert bits.set(13) is False
    assert bits[13] and not bits[12] and not bits[14]
    assert bits.set(13) is True
    assert bits.popcount() == 1
    assert bits.clear(13) is True
    assert bits.clear(13) is False
    assert bits.popcount() == 0


def test_lsb_first_layout():
    bits = BitArray(12)
    bits.set(0)
    bits.set(9)
    assert bits.to_bytes() == bytes([0b00000001, 0b00000010])


def test_out_of_range():
    bits = BitArray(8)
    with pytest.raises(IndexError):
        bits.set(8)
    with pytest.raises(IndexError):
        bits[-1]
    with pytest.raises(IndexError):
        bits.set(3)
        bits.all_set([3, 9])


def test_from_bytes_rejects_padding_and_length():
    with pytest.raises(ValueError):
        BitArray.from_bytes(4, b"\x10")
    with pytest.raises(ValueError):
        BitArray.from_bytes(9, b"\x00")


@given(st.integers(1, 300).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.booleans(), st.integers(0, n - 1)), max_size=200))
))
def test_popcount_tracks_reference(case):
    length, ops = case
    bits = BitArray(length)
    ref = [False] * length
    for is_set, i in ops:
        if is_set:
            bits.set(i)
            ref[i] = True
        else:
            bits.clear(i)
            ref[i] = False
        assert bits.popcount() == sum(ref)
    assert list(bits) == ref
    assert len(bits) == length
    assert BitArray.from_bytes(length, bits.to_bytes()) == bits
