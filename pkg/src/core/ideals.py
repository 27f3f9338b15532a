# core/ideals.py
"""
Hyperideals, multiplicative subsets and their classification.

All predicates are exhaustive scans over the operation tables. Subsets are
bitmasks (plain ints or SubsetMask); enumerations run in ascending bitmask
order so their output is canonical.
"""
from __future__ import annotations

import itertools
import logging
from typing import Dict, List, Optional

import numpy as np

from .bitset import full_mask, is_subset, members
from .config import CFG
from .domain import KrasnerStructure, Mask, SubsetMask, bits_of
from .errors import InvariantViolation, UsageError
from .structure import as_mask, f_union, g_image, g_padded, index_grids

logger = logging.getLogger(__name__)


def _bits(S: KrasnerStructure, A: Mask) -> int:
    return as_mask(S, bits_of(A))


def _membership(S: KrasnerStructure, bits: int) -> np.ndarray:
    return np.array([(bits >> x) & 1 for x in S.carrier], dtype=bool)


def _tag(S: KrasnerStructure, bits: int, role: str) -> SubsetMask:
    return SubsetMask(owner=S.name, bits=bits, role=role)


# ---------------------------------------------------------------------------
# Hyperideals
# ---------------------------------------------------------------------------

def is_hyperideal(S: KrasnerStructure, A: Mask) -> bool:
    a = _bits(S, A)
    if a == 0:
        raise UsageError("hyperideal test on the empty set")
    if not (a >> S.zero) & 1:
        return False
    if any(not (a >> S.neg[x]) & 1 for x in members(a)):
        return False
    if not is_subset(f_union(S, [a] * S.m), a):
        return False
    full = full_mask(S.card)
    for i in range(S.n):
        args = [full] * S.n
        args[i] = a
        if not is_subset(g_image(S, args), a):
            return False
    return True


def enumerate_hyperideals(S: KrasnerStructure) -> List[SubsetMask]:
    cached = S._cache.get("hyperideals")
    if cached is not None:
        return list(cached)
    zero_bit = 1 << S.zero
    out = [
        _tag(S, bits, "hyperideal")
        for bits in range(1, full_mask(S.card) + 1)
        if bits & zero_bit and is_hyperideal(S, bits)
    ]
    S._cache["hyperideals"] = tuple(out)
    logger.debug(f"{S.name}: {len(out)} hyperideals")
    return out


def _require_proper_ideal(S: KrasnerStructure, I: Mask, what: str) -> int:
    bits = _bits(S, I)
    if bits == 0 or not is_hyperideal(S, bits):
        raise UsageError(f"{what}: {sorted(members(bits))} is not a hyperideal of '{S.name}'")
    if bits == full_mask(S.card):
        raise UsageError(f"{what}: hyperideal must be proper")
    return bits


# ---------------------------------------------------------------------------
# Multiplicative subsets
# ---------------------------------------------------------------------------

def is_multiplicative(S: KrasnerStructure, A: Mask) -> bool:
    a = _bits(S, A)
    if not (a >> S.one) & 1:
        return False
    return is_subset(g_image(S, [a] * S.n), a)


def enumerate_multiplicative(S: KrasnerStructure) -> List[SubsetMask]:
    cached = S._cache.get("multiplicative")
    if cached is not None:
        return list(cached)
    one_bit = 1 << S.one
    out = [
        _tag(S, bits, "multiplicative")
        for bits in range(1, full_mask(S.card) + 1)
        if bits & one_bit and is_multiplicative(S, bits)
    ]
    S._cache["multiplicative"] = tuple(out)
    return out


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def is_prime(S: KrasnerStructure, I: Mask) -> bool:
    """Elementwise criterion: g(x_1..x_n) in I forces some x_i in I."""
    bits = _require_proper_ideal(S, I, "is_prime")
    inside = _membership(S, bits)
    some = np.zeros((S.card,) * S.n, dtype=bool)
    for X in index_grids(S.card, S.n):
        some = some | inside[X]
    return not np.any(inside[S.g] & ~some)


def is_prime_by_ideals(S: KrasnerStructure, I: Mask) -> bool:
    """Hyperideal-product form: g(I_1..I_n) inside I forces some I_j inside I."""
    bits = _require_proper_ideal(S, I, "is_prime_by_ideals")
    ideals = [J.bits for J in enumerate_hyperideals(S)]
    combos = (
        itertools.combinations_with_replacement(ideals, S.n)
        if S.commutative else itertools.product(ideals, repeat=S.n)
    )
    for combo in combos:
        if any(is_subset(J, bits) for J in combo):
            continue
        if is_subset(g_image(S, list(combo)), bits):
            return False
    return True


def power_radical(S: KrasnerStructure, I: Mask) -> SubsetMask:
    """{x : some power of x lies in I}; powers are followed until they cycle."""
    bits = _bits(S, I)
    out = 0
    for x in S.carrier:
        p, seen = x, set()
        while p not in seen:
            if (bits >> p) & 1:
                out |= 1 << x
                break
            seen.add(p)
            p = g_padded(S, p, x)
    return _tag(S, out, "plain")


def radical(S: KrasnerStructure, I: Mask) -> SubsetMask:
    """Intersection of the prime hyperideals containing I, or R if there is none."""
    bits = _bits(S, I)
    if bits == 0 or not is_hyperideal(S, bits):
        raise UsageError(f"radical: {sorted(members(bits))} is not a hyperideal of '{S.name}'")
    key = ("radical", bits)
    if key in S._cache:
        return S._cache[key]
    full = full_mask(S.card)
    out = full
    for P in enumerate_hyperideals(S):
        if P.bits != full and is_subset(bits, P.bits) and is_prime(S, P):
            out &= P.bits
    powers = power_radical(S, bits).bits
    if not is_subset(powers, out):
        raise InvariantViolation(
            f"radical of {sorted(members(bits))} in '{S.name}' misses nilpotent-power "
            f"elements {sorted(members(powers & ~out))}"
        )
    result = S._cache[key] = _tag(S, out, "radical")
    return result


def is_primary(S: KrasnerStructure, Q: Mask, quantifier: Optional[str] = None) -> bool:
    """
    g(x_1..x_n) in Q with x_i outside Q must put g(.., one at i, ..) into rad(Q).

    quantifier="universal" demands this for every such i, "existential" for at
    least one of them.
    """
    quantifier = quantifier or CFG.primary_quantifier
    if quantifier not in ("universal", "existential"):
        raise UsageError(f"unknown primary quantifier '{quantifier}'")
    bits = _require_proper_ideal(S, Q, "is_primary")
    rad = radical(S, bits).bits
    for t in itertools.product(S.carrier, repeat=S.n):
        if not (bits >> S.g_at(t)) & 1:
            continue
        outside = [i for i, x in enumerate(t) if not (bits >> x) & 1]
        if not outside:
            continue
        hits = [
            bool((rad >> S.g_at(t[:i] + (S.one,) + t[i + 1:])) & 1)
            for i in outside
        ]
        if quantifier == "universal" and not all(hits):
            return False
        if quantifier == "existential" and not any(hits):
            return False
    return True


def is_two_absorbing(S: KrasnerStructure, I: Mask) -> bool:
    """
    A product in I must have a pair of factors whose product is in I.

    For n=2 the pair condition is the hypothesis itself, so products of three
    factors g(g(x,y),z) are scanned instead.
    """
    bits = _require_proper_ideal(S, I, "is_two_absorbing")
    width = 3 if S.n == 2 else S.n
    for t in itertools.product(S.carrier, repeat=width):
        prod = S.g_at((S.g_at(t[:2]), t[2])) if S.n == 2 else S.g_at(t)
        if not (bits >> prod) & 1:
            continue
        if not any((bits >> g_padded(S, t[i], t[j])) & 1
                   for i, j in itertools.combinations(range(width), 2)):
            return False
    return True


def is_maximal(S: KrasnerStructure, M: Mask) -> bool:
    bits = _require_proper_ideal(S, M, "is_maximal")
    full = full_mask(S.card)
    return not any(
        J.bits != bits and J.bits != full and is_subset(bits, J.bits)
        for J in enumerate_hyperideals(S)
    )


def is_hyperintegral_domain(S: KrasnerStructure) -> bool:
    """Commutative, and a zero product forces a zero factor."""
    if not S.commutative:
        return False
    some_zero = np.zeros((S.card,) * S.n, dtype=bool)
    for X in index_grids(S.card, S.n):
        some_zero = some_zero | (X == S.zero)
    return not np.any((S.g == S.zero) & ~some_zero)


def classify(S: KrasnerStructure, I: Mask) -> Dict[str, bool]:
    """Every predicate at once; proper-only predicates are False on R."""
    bits = _bits(S, I)
    verdict = {"hyperideal": bool(bits) and is_hyperideal(S, bits)}
    proper = verdict["hyperideal"] and bits != full_mask(S.card)
    verdict["proper"] = proper
    verdict["prime"] = proper and is_prime(S, bits)
    verdict["primary"] = proper and is_primary(S, bits)
    verdict["two-absorbing"] = proper and is_two_absorbing(S, bits)
    verdict["maximal"] = proper and is_maximal(S, bits)
    verdict["multiplicative"] = is_multiplicative(S, bits)
    return verdict
