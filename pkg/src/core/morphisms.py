# core/morphisms.py
"""
Homomorphisms between finite structures.

A map k is a homomorphism when k(f1(x..)) = f2(k(x)..) as sets on every
m-tuple, k(g1(x..)) = g2(k(x)..) on every n-tuple, k(zero) = zero and,
unless switched off in config, k(one) = one.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bitset import members
from .config import CFG
from .domain import KrasnerStructure, LocalizedStructure, MapTable, Mask, TheoremVerdict, bits_of
from .errors import CapExceededError, HypothesisError, UsageError
from .localization import build_localization, is_invertible, natural_map
from .structure import g_padded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomCheck:
    holds: bool
    equation: str = ""
    counterexample: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def _check_arity(A: KrasnerStructure, B: KrasnerStructure) -> None:
    if A.arity != B.arity:
        raise UsageError(
            f"arity mismatch: '{A.name}' is ({A.m},{A.n}), '{B.name}' is ({B.m},{B.n})"
        )


def _preserve_one(preserve_one: Optional[bool]) -> bool:
    return CFG.homs_preserve_one if preserve_one is None else preserve_one


def is_homomorphism(
    k: MapTable,
    A: KrasnerStructure,
    B: KrasnerStructure,
    preserve_one: Optional[bool] = None,
) -> HomCheck:
    _check_arity(A, B)
    if len(k.image) != A.card or any(not 0 <= y < B.card for y in k.image):
        raise UsageError(f"map {k.source} -> {k.target} is not total into '{B.name}'")
    K = np.asarray(k.image, dtype=np.int64)

    if K[A.zero] != B.zero:
        return HomCheck(False, "zero", (A.zero,))
    if _preserve_one(preserve_one) and K[A.one] != B.one:
        return HomCheck(False, "one", (A.one,))

    lifted = np.zeros(A.f.shape, dtype=np.uint64)
    for e in A.carrier:
        hit = ((A.f >> np.uint64(e)) & np.uint64(1)).astype(bool)
        lifted |= np.where(hit, np.uint64(1) << np.uint64(K[e]), np.uint64(0))
    bad = np.argwhere(lifted != B.f[np.ix_(*(K,) * A.m)])
    if len(bad):
        return HomCheck(False, "f", tuple(int(v) for v in bad[0]))

    bad = np.argwhere(K[A.g] != B.g[np.ix_(*(K,) * A.n)])
    if len(bad):
        return HomCheck(False, "g", tuple(int(v) for v in bad[0]))
    return HomCheck(True)


# ---------------------------------------------------------------------------
# Backtracking search
# ---------------------------------------------------------------------------

class _Constraints:
    """Equations bucketed by the largest source element they mention."""

    def __init__(self, A: KrasnerStructure):
        self.A = A
        self.f_at: Dict[int, List[Tuple[Tuple[int, ...], List[int]]]] = {x: [] for x in A.carrier}
        self.g_at: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {x: [] for x in A.carrier}
        self.neg_at: Dict[int, List[int]] = {x: [] for x in A.carrier}
        for t in itertools.product(A.carrier, repeat=A.m):
            out = members(A.f_at(t))
            self.f_at[max(max(t), max(out))].append((t, out))
        for t in itertools.product(A.carrier, repeat=A.n):
            out = A.g_at(t)
            self.g_at[max(max(t), out)].append((t, out))
        for x in A.carrier:
            if A.neg[x] >= 0:
                self.neg_at[max(x, A.neg[x])].append(x)

    def consistent(self, j: int, img: Sequence[int], B: KrasnerStructure) -> bool:
        A = self.A
        for x in self.neg_at[j]:
            if img[A.neg[x]] != B.neg[img[x]]:
                return False
        for t, out in self.g_at[j]:
            if img[out] != B.g_at(tuple(img[x] for x in t)):
                return False
        for t, out in self.f_at[j]:
            lifted = 0
            for e in out:
                lifted |= 1 << img[e]
            if lifted != B.f_at(tuple(img[x] for x in t)):
                return False
        return True


def _pins(A: KrasnerStructure, B: KrasnerStructure, preserve_one: bool) -> Dict[int, int]:
    pins = {A.zero: B.zero}
    if preserve_one:
        if pins.get(A.one, B.one) != B.one:
            return {}
        pins[A.one] = B.one
    return pins


def _search(A: KrasnerStructure, B: KrasnerStructure, preserve_one: bool,
            injective: bool):
    rules = _Constraints(A)
    pins = _pins(A, B, preserve_one)
    if preserve_one and not pins:
        return
    img = [-1] * A.card
    used = set()

    def extend(j: int):
        if j == A.card:
            yield tuple(img)
            return
        choices = [pins[j]] if j in pins else range(B.card)
        for y in choices:
            if injective and y in used:
                continue
            img[j] = y
            used.add(y)
            if rules.consistent(j, img, B):
                yield from extend(j + 1)
            used.discard(y)
            img[j] = -1

    yield from extend(0)


def enumerate_homomorphisms(
    A: KrasnerStructure,
    B: KrasnerStructure,
    preserve_one: Optional[bool] = None,
    cap: Optional[int] = None,
) -> List[MapTable]:
    """Every homomorphism A -> B in lexicographic order of images."""
    _check_arity(A, B)
    cap = CFG.hom_search_cap if cap is None else cap
    space = B.card ** A.card
    if space > cap:
        raise CapExceededError(
            f"{B.card}^{A.card} candidate maps {A.name} -> {B.name} exceed search cap {cap}", space
        )
    out = [
        MapTable(A.name, B.name, image)
        for image in _search(A, B, _preserve_one(preserve_one), injective=False)
    ]
    logger.debug(f"{A.name} -> {B.name}: {len(out)} homomorphisms")
    return out


def inverse_map(k: MapTable) -> MapTable:
    inv = [-1] * len(k.image)
    for i, v in enumerate(k.image):
        inv[v] = i
    return MapTable(k.target, k.source, tuple(inv))


def find_isomorphism(
    A: KrasnerStructure,
    B: KrasnerStructure,
    preserve_one: Optional[bool] = None,
) -> Optional[MapTable]:
    """Lexicographically least bijective homomorphism with homomorphic inverse."""
    if A.arity != B.arity or A.card != B.card:
        return None
    keep_one = _preserve_one(preserve_one)
    for image in _search(A, B, keep_one, injective=True):
        k = MapTable(A.name, B.name, image)
        if is_homomorphism(k, A, B, keep_one) and is_homomorphism(inverse_map(k), B, A, keep_one):
            return k
    return None


def compose(outer: MapTable, inner: MapTable) -> MapTable:
    return MapTable(inner.source, outer.target, tuple(outer(inner(x)) for x in range(len(inner.image))))


def check_universal_property(
    S: KrasnerStructure,
    Sset: Mask,
    B: KrasnerStructure,
    k: MapTable,
    L: Optional[LocalizedStructure] = None,
) -> TheoremVerdict:
    """
    Build h(r/s) = g_B(k(r), k(s)^-1, one..) and check that it is the unique
    homomorphism S^-1 R -> B with h . phi = k.
    """
    sbits = bits_of(Sset)
    L = L or build_localization(S, sbits)
    T = L.structure
    instance = {"structure": S.name, "subset": members(sbits), "target": B.name,
                "map": list(k.image)}

    if not is_homomorphism(k, S, B):
        raise HypothesisError("homomorphism", f"{list(k.image)} is not a homomorphism {S.name} -> {B.name}")
    inverse: Dict[int, int] = {}
    for s in members(sbits):
        inv = is_invertible(B, k(s))
        if inv is None:
            raise HypothesisError("invertible", f"k({s})={k(s)} is not invertible in '{B.name}'")
        inverse[s] = inv

    image: List[int] = []
    for c in L.classes:
        values = {p: g_padded(B, k(p.r), inverse[p.s]) for p in c.members}
        distinct = sorted(set(values.values()))
        if len(distinct) > 1:
            return TheoremVerdict("universal-property", instance, False,
                                  {"class": c.id, "values": distinct}, "h is not well defined")
        image.append(distinct[0])
    h = MapTable(T.name, B.name, tuple(image))

    hom = is_homomorphism(h, T, B)
    if not hom:
        return TheoremVerdict("universal-property", instance, False,
                              {"equation": hom.equation, "tuple": list(hom.counterexample or ())},
                              "h is not a homomorphism")

    phi = natural_map(L)
    if compose(h, phi).image != k.image:
        return TheoremVerdict("universal-property", instance, False,
                              {"h": list(h.image)}, "h . phi differs from k")

    factoring = [q for q in enumerate_homomorphisms(T, B) if compose(q, phi).image == k.image]
    if [q.image for q in factoring] != [h.image]:
        return TheoremVerdict("universal-property", instance, False,
                              {"factoring": [list(q.image) for q in factoring]},
                              "h is not the unique factorization")
    return TheoremVerdict("universal-property", instance, True, detail=f"h={list(h.image)}")
