"""Integer bitsets: bit ``i`` set means element ``i`` of a fixed universe is present."""

from __future__ import annotations

from typing import Iterable, Iterator


def full(n: int) -> int:
    return (1 << n) - 1


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def count(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int, *, nonempty: bool = True) -> Iterator[int]:
    """All submasks of ``mask`` in decreasing numeric order."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask
    if not nonempty:
        yield 0


def image(mask: int, mapping) -> int:
    """Image of a set under an index map (any sequence/mapping ``i -> j``)."""
    out = 0
    for i in iter_bits(mask):
        out |= 1 << mapping[i]
    return out


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key ordering sets by size, then lexicographically by member index."""
    return (count(mask), tuple(indices(mask)))
