"""Bitset helpers over Python ints (bit i set <=> element i present)."""

from typing import Iterable, Iterator


def bit(i: int) -> int:
    return 1 << i


def from_iter(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int) -> list:
    return list(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def highest(mask: int) -> int:
    return mask.bit_length() - 1


def popcount(mask: int) -> int:
    return mask.bit_count()
