"""
Modular-arithmetic facts about Z_k computed directly, without the core package.

Used as the reference the hyperring code must agree with when f is the
singleton sum and g the product mod k.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import FrozenSet, List, Set


def divisors(k: int) -> List[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def prime_factors(d: int) -> Set[int]:
    out, p = set(), 2
    while p * p <= d:
        while d % p == 0:
            out.add(p)
            d //= p
        p += 1
    if d > 1:
        out.add(d)
    return out


def principal(k: int, d: int) -> FrozenSet[int]:
    return frozenset(range(0, k, d))


def ideals(k: int) -> List[FrozenSet[int]]:
    """Every ideal of Z_k is dZ_k for a divisor d."""
    return [principal(k, d) for d in divisors(k)]


def generator(k: int, I: FrozenSet[int]) -> int:
    return min(x for x in I if x) if len(I) > 1 else k


def is_prime(k: int, I: FrozenSet[int]) -> bool:
    d = generator(k, I)
    return d != 1 and len(prime_factors(d)) == 1 and d in prime_factors(d)


def is_maximal(k: int, I: FrozenSet[int]) -> bool:
    return is_prime(k, I)


def radical(k: int, I: FrozenSet[int]) -> FrozenSet[int]:
    d = generator(k, I)
    r = 1
    for p in prime_factors(d):
        r *= p
    return principal(k, r)


def is_primary(k: int, I: FrozenSet[int]) -> bool:
    d = generator(k, I)
    return d != 1 and len(prime_factors(d)) == 1


def is_two_absorbing(k: int, I: FrozenSet[int]) -> bool:
    if len(I) == k:
        return False
    for a, b, c in product(range(k), repeat=3):
        if a * b * c % k in I and not (a * b % k in I or a * c % k in I or b * c % k in I):
            return False
    return True


def multiplicative_subsets(k: int) -> List[FrozenSet[int]]:
    out = []
    rest = [x for x in range(k) if x != 1 % k]
    for size in range(len(rest) + 1):
        for combo in combinations(rest, size):
            S = frozenset((1 % k,) + combo)
            if all(a * b % k in S for a in S for b in S):
                out.append(S)
    return out


def fraction_class_count(k: int, S: FrozenSet[int]) -> int:
    """Classes of (r, s) under t(r s' - r' s) = 0 for some t in S."""
    pairs = [(r, s) for r in range(k) for s in sorted(S)]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            p = parent[p]
        return p

    for (r, s), (r2, s2) in product(pairs, repeat=2):
        if any(t * (r * s2 - r2 * s) % k == 0 for t in S):
            parent[find((r, s))] = find((r2, s2))
    return len({find(p) for p in pairs})


def quotient_size(k: int, I: FrozenSet[int]) -> int:
    return k // len(I)
