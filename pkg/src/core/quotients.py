# core/quotients.py
"""
Quotient hyperrings R/I.

Cosets are f(r, I, zero..). The induced operations are evaluated on every
representative tuple; the construction is refused when the cosets do not
partition R or when a value depends on the representatives.
"""
from __future__ import annotations

import itertools
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from .bitset import format_mask, least, members
from .domain import (
    CosetClass, KrasnerStructure, MapTable, Mask, QuotientStructure, SubsetMask,
    TheoremVerdict, bits_of,
)
from .errors import HypothesisError, InvariantViolation, PartitionError, UsageError, WellDefinednessError
from .ideals import is_hyperideal, is_multiplicative
from .localization import build_localization, is_invertible, subset_token
from .morphisms import find_isomorphism, inverse_map, is_homomorphism
from .structure import ensure_valid, f_union, g_padded, make_structure, validate_constructed
from .transport import extend_ideal

logger = logging.getLogger(__name__)


def coset(S: KrasnerStructure, r: int, ideal: int) -> int:
    return f_union(S, [1 << r, ideal] + [1 << S.zero] * (S.m - 2))


def build_quotient(
    S: KrasnerStructure,
    I: Mask,
    allow_weak: Optional[bool] = None,
) -> QuotientStructure:
    bits = bits_of(I)
    if bits == 0 or not is_hyperideal(S, bits):
        raise UsageError(f"{format_mask(bits)} is not a hyperideal of '{S.name}'")
    ensure_valid(S, allow_weak)

    raw = [coset(S, r, bits) for r in S.carrier]
    distinct = sorted(set(raw), key=least)
    for a, b in itertools.combinations(distinct, 2):
        if a & b:
            raise PartitionError(
                f"cosets {format_mask(a)} and {format_mask(b)} of {format_mask(bits)} overlap"
            )
    if any(not (c >> r) & 1 for r, c in enumerate(raw)):
        raise PartitionError("some r is missing from its own coset f(r, I, zero..)")
    ids = {c: i for i, c in enumerate(distinct)}
    coset_of = tuple(ids[c] for c in raw)
    cosets = tuple(CosetClass(id=i, representative=least(c), members=c) for i, c in enumerate(distinct))
    K, m, n = len(cosets), S.m, S.n

    F = np.zeros((K,) * m, dtype=np.uint64)
    seen_f: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], int]] = {}
    for t in itertools.product(S.carrier, repeat=m):
        value = 0
        for u in members(S.f_at(t)):
            value |= 1 << coset_of[u]
        key = tuple(coset_of[x] for x in t)
        if key in seen_f:
            if seen_f[key][1] != value:
                raise WellDefinednessError("induced f", seen_f[key], (t, value))
        else:
            seen_f[key] = (t, value)
            F[key] = value

    G = np.zeros((K,) * n, dtype=np.int64)
    seen_g: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], int]] = {}
    for t in itertools.product(S.carrier, repeat=n):
        value = coset_of[S.g_at(t)]
        key = tuple(coset_of[x] for x in t)
        if key in seen_g:
            if seen_g[key][1] != value:
                raise WellDefinednessError("induced g", seen_g[key], (t, value))
        else:
            seen_g[key] = (t, value)
            G[key] = value

    name = f"{S.name}.I{subset_token(bits)}"
    T = make_structure(name, m, n, K, F, G, coset_of[S.zero], coset_of[S.one], S.commutative)
    report = validate_constructed(T, allow_weak)
    logger.info(f"{S.name}: quotient by {format_mask(bits)} -> {K} cosets")
    return QuotientStructure(base=S, ideal=bits, cosets=cosets, coset_of=coset_of,
                             structure=T, report=report)


def sbar(Q: QuotientStructure, Sset: Mask) -> SubsetMask:
    """Image of a multiplicative subset disjoint from I."""
    S, sbits = Q.base, bits_of(Sset)
    if not is_multiplicative(S, sbits):
        raise UsageError(f"{format_mask(sbits)} is not multiplicative in '{S.name}'")
    if sbits & Q.ideal:
        raise HypothesisError(
            "disjointness", f"S={format_mask(sbits)} meets I={format_mask(Q.ideal)}"
        )
    out = 0
    for s in members(sbits):
        out |= 1 << Q.coset_of[s]
    if not is_multiplicative(Q.structure, out):
        raise InvariantViolation(f"image {format_mask(out)} is not multiplicative in '{Q.structure.name}'")
    return SubsetMask(Q.structure.name, out, "multiplicative")


def projection_map(Q: QuotientStructure) -> MapTable:
    return MapTable(Q.base.name, Q.structure.name, Q.coset_of)


def check_quotient_fraction_iso(S: KrasnerStructure, Sset: Mask, I: Mask) -> TheoremVerdict:
    """
    S-bar^-1 (R/I) against S^-1 R / S^-1 I.

    Besides a blind isomorphism search, the map kappa(r + I) = coset of r/1
    is checked to be a homomorphism that inverts S-bar, kills only what S-bar
    kills and generates the target as kappa(a) kappa(s)^-1; the map it induces
    on fractions must then be an isomorphism.
    """
    sbits, ibits = bits_of(Sset), bits_of(I)
    instance = {"structure": S.name, "subset": members(sbits), "ideal": members(ibits)}
    Q = build_quotient(S, ibits)
    Sb = sbar(Q, sbits)
    A = build_localization(Q.structure, Sb)
    L = build_localization(S, sbits)
    B = build_quotient(L.structure, extend_ideal(L, ibits))
    QA, TB = Q.structure, B.structure

    def fail(detail: str, **payload) -> TheoremVerdict:
        return TheoremVerdict("quotient-fraction-iso", instance, False, payload, detail)

    iso = find_isomorphism(A.structure, TB)
    if iso is None:
        return fail("no isomorphism", left=A.structure.card, right=TB.card)

    kappa: List[int] = [-1] * QA.card
    for r in S.carrier:
        value = B.coset_of[L.fraction(r, S.one)]
        c = Q.coset_of[r]
        if kappa[c] not in (-1, value):
            return fail("kappa depends on the coset representative", coset=c)
        kappa[c] = value
    k = MapTable(QA.name, TB.name, tuple(kappa))
    hom = is_homomorphism(k, QA, TB)
    if not hom:
        return fail("kappa is not a homomorphism", equation=hom.equation,
                    tuple=list(hom.counterexample or ()))

    denominators = members(Sb.bits)
    inverse = {}
    for s in denominators:
        inv = is_invertible(TB, k(s))
        if inv is None:
            return fail("kappa(s) is not invertible", s=s)
        inverse[s] = inv
    for x in QA.carrier:
        if k(x) == TB.zero and not any(g_padded(QA, t, x) == QA.zero for t in denominators):
            return fail("kappa kills an element S-bar does not kill", x=x)
    reached = {g_padded(TB, k(a), inverse[s]) for a in QA.carrier for s in denominators}
    if reached != set(TB.carrier):
        return fail("target not generated by kappa(a) kappa(s)^-1",
                    missing=sorted(set(TB.carrier) - reached))

    h = MapTable(A.structure.name, TB.name, tuple(
        g_padded(TB, k(c.canonical.r), inverse[c.canonical.s]) for c in A.classes
    ))
    if len(set(h.image)) != TB.card or not is_homomorphism(h, A.structure, TB) \
            or not is_homomorphism(inverse_map(h), TB, A.structure):
        return fail("induced map is not an isomorphism", h=list(h.image))
    return TheoremVerdict("quotient-fraction-iso", instance, True,
                          detail=f"iso={list(iso.image)} h={list(h.image)}")
