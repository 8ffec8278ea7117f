"""
Subsets of a finite ground set {0, ..., n-1} stored as int bitmasks.

Bit x of a mask is set iff point x belongs to the subset. Masks are plain
ints so that union, intersection and complement are single machine operations
and masks can be used as dictionary keys.

>>> mask_of([0, 2])
5
>>> members(5)
[0, 2]
>>> format_mask(complement(5, 4))
'{1, 3}'
"""
from typing import Iterable, Iterator, List


def mask_of(points: Iterable[int]) -> int:
    mask = 0
    for x in points:
        if x < 0:
            raise ValueError(f"point index must not be negative, got {x}")
        mask |= 1 << x
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) & ~mask


def contains(mask: int, x: int) -> bool:
    return (mask >> x) & 1 == 1


def is_subset(a: int, b: int) -> bool:
    """Return whether a is a subset of b"""
    return a & ~b == 0


def iter_members(mask: int) -> Iterator[int]:
    x = 0
    while mask:
        if mask & 1:
            yield x
        mask >>= 1
        x += 1


def members(mask: int) -> List[int]:
    return list(iter_members(mask))


def all_subsets(n: int) -> range:
    """All 2**n subsets of an n-point ground set, in increasing mask order"""
    return range(1 << n)


def format_mask(mask: int) -> str:
    """
    >>> format_mask(0)
    '{}'
    >>> format_mask(6)
    '{1, 2}'
    """
    return "{" + ", ".join(str(x) for x in iter_members(mask)) + "}"
