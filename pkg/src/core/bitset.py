# core/bitset.py
"""Element sets as integer bitmasks: bit i set <=> element i is a member."""
from __future__ import annotations
from typing import Iterable, List

from .config import BITMASK_LIMIT
from .errors import UsageError


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def members(mask: int) -> List[int]:
    out: List[int] = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(card: int) -> int:
    if card > BITMASK_LIMIT:
        raise UsageError(f"carrier of size {card} exceeds the {BITMASK_LIMIT}-element bitmask limit")
    return (1 << card) - 1


def contains(mask: int, e: int) -> bool:
    return bool((mask >> e) & 1)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def least(mask: int) -> int:
    """Index of the lowest member; -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def parse_list(text: str) -> int:
    """'0,2,4' -> bitmask. Empty string gives the empty set."""
    text = text.strip()
    if not text:
        return 0
    try:
        return mask_of(int(tok) for tok in text.split(","))
    except ValueError as e:
        raise UsageError(f"bad element list '{text}': {e}") from e


def format_mask(mask: int) -> str:
    return "{" + ",".join(str(e) for e in members(mask)) + "}"
