# core/transport.py
"""Moving hyperideals along the natural map R -> S^-1 R, and the theorems about it."""
from __future__ import annotations

import logging
from typing import Any, Callable, Dict

from .bitset import format_mask, full_mask, is_subset, members
from .domain import KrasnerStructure, LocalizedStructure, Mask, SubsetMask, TheoremVerdict, bits_of
from .errors import HypothesisError, InvariantViolation, UsageError
from .ideals import (
    enumerate_hyperideals, is_hyperideal, is_maximal, is_multiplicative, is_primary,
    is_prime, is_two_absorbing, radical,
)
from .localization import build_localization, is_invertible

logger = logging.getLogger(__name__)


def _instance(L: LocalizedStructure, **extra: Any) -> Dict[str, Any]:
    out: Dict[str, Any] = {"structure": L.base.name, "subset": members(L.subset)}
    out.update({k: members(v) if isinstance(v, int) else v for k, v in extra.items()})
    return out


def _base_ideal(L: LocalizedStructure, I: Mask, what: str) -> int:
    bits = bits_of(I)
    if bits == 0 or not is_hyperideal(L.base, bits):
        raise UsageError(f"{what}: {format_mask(bits)} is not a hyperideal of '{L.base.name}'")
    return bits


def extend_ideal(L: LocalizedStructure, I: Mask) -> SubsetMask:
    """S^-1 I = {a/s : a in I, s in S}."""
    bits = _base_ideal(L, I, "extend_ideal")
    out = 0
    for a in members(bits):
        for s in members(L.subset):
            out |= 1 << L.fraction(a, s)
    if not is_hyperideal(L.structure, out):
        raise InvariantViolation(
            f"extension of {format_mask(bits)} to '{L.structure.name}' is not a hyperideal"
        )
    return SubsetMask(L.structure.name, out, "hyperideal")


def contract_ideal(L: LocalizedStructure, J: Mask) -> SubsetMask:
    """{r in R : r/s in J for some s in S}."""
    bits = bits_of(J)
    if bits == 0 or not is_hyperideal(L.structure, bits):
        raise UsageError(f"contract_ideal: {format_mask(bits)} is not a hyperideal of '{L.structure.name}'")
    out = 0
    for r in L.base.carrier:
        if any((bits >> L.fraction(r, s)) & 1 for s in members(L.subset)):
            out |= 1 << r
    if not is_hyperideal(L.base, out):
        raise InvariantViolation(f"contraction of {format_mask(bits)} is not a hyperideal")
    return SubsetMask(L.base.name, out, "hyperideal")


def check_unit_criterion(L: LocalizedStructure, I: Mask) -> TheoremVerdict:
    """I meets S exactly when S^-1 I is everything."""
    bits = _base_ideal(L, I, "check_unit_criterion")
    meets = bool(bits & L.subset)
    extended = extend_ideal(L, bits).bits
    whole = extended == full_mask(L.structure.card)
    ok = meets == whole
    return TheoremVerdict(
        "unit-criterion", _instance(L, ideal=bits), ok,
        None if ok else {"meets": meets, "extended": members(extended)},
    )


def check_all_extended(L: LocalizedStructure) -> TheoremVerdict:
    for J in enumerate_hyperideals(L.structure):
        back = extend_ideal(L, contract_ideal(L, J)).bits
        if back != J.bits:
            return TheoremVerdict(
                "all-extended", _instance(L), False,
                {"ideal": J.members(), "extend-contract": members(back)},
            )
    return TheoremVerdict("all-extended", _instance(L), True)


def check_contract_extend(L: LocalizedStructure, I: Mask) -> TheoremVerdict:
    bits = _base_ideal(L, I, "check_contract_extend")
    back = contract_ideal(L, extend_ideal(L, bits)).bits
    ok = is_subset(bits, back)
    return TheoremVerdict(
        "contract-extend", _instance(L, ideal=bits), ok,
        None if ok else {"contract-extend": members(back)},
        detail="saturated" if back == bits else "",
    )


def check_local_maximal(S: KrasnerStructure, P: Mask) -> TheoremVerdict:
    """Localizing at R minus a prime P leaves S^-1 P as the only maximal hyperideal."""
    bits = bits_of(P)
    if not is_prime(S, bits):
        raise HypothesisError("prime", f"{format_mask(bits)} is not prime in '{S.name}'")
    complement = full_mask(S.card) & ~bits
    if not is_multiplicative(S, complement):
        raise InvariantViolation(f"complement of prime {format_mask(bits)} is not multiplicative")
    L = build_localization(S, complement)
    T = L.structure
    M = extend_ideal(L, bits).bits
    instance = _instance(L, prime=bits)
    full = full_mask(T.card)

    if M == full:
        return TheoremVerdict("local-maximal", instance, False, {"extended": members(M)},
                              "extended prime is not proper")
    if not is_maximal(T, M):
        return TheoremVerdict("local-maximal", instance, False, {"extended": members(M)},
                              "extended prime is not maximal")
    maximal = [J.bits for J in enumerate_hyperideals(T) if J.bits != full and is_maximal(T, J)]
    if maximal != [M]:
        return TheoremVerdict("local-maximal", instance, False,
                              {"maximal": [members(b) for b in maximal]},
                              "maximal hyperideal is not unique")
    stuck = [c for c in T.carrier if not (M >> c) & 1 and is_invertible(T, c) is None]
    if stuck:
        return TheoremVerdict("local-maximal", instance, False, {"class": stuck[0]},
                              "class outside the maximal hyperideal is not invertible")
    return TheoremVerdict("local-maximal", instance, True, detail=f"M={members(M)}")


def _check_preserved(
    theorem: str,
    hypothesis: str,
    predicate: Callable[[KrasnerStructure, int], bool],
    L: LocalizedStructure,
    I: Mask,
) -> TheoremVerdict:
    S = L.base
    bits = _base_ideal(L, I, theorem)
    if bits == full_mask(S.card) or not predicate(S, bits):
        raise HypothesisError(hypothesis, f"{format_mask(bits)} is not {hypothesis} in '{S.name}'")
    if bits & L.subset:
        raise HypothesisError(
            "disjointness", f"{format_mask(bits)} meets S={format_mask(L.subset)}"
        )
    E = extend_ideal(L, bits).bits
    ok = E != full_mask(L.structure.card) and predicate(L.structure, E)
    return TheoremVerdict(
        theorem, _instance(L, ideal=bits), ok,
        None if ok else {"extended": members(E)},
    )


def check_prime_preserved(L: LocalizedStructure, P: Mask) -> TheoremVerdict:
    return _check_preserved("prime-preserved", "prime", is_prime, L, P)


def check_primary_preserved(L: LocalizedStructure, Q: Mask) -> TheoremVerdict:
    return _check_preserved("primary-preserved", "primary", is_primary, L, Q)


def check_two_absorbing_preserved(L: LocalizedStructure, I: Mask) -> TheoremVerdict:
    return _check_preserved("two-absorbing-preserved", "two-absorbing", is_two_absorbing, L, I)


def check_radical_commutes(L: LocalizedStructure, I: Mask) -> TheoremVerdict:
    """rad(S^-1 I) = S^-1 rad(I)."""
    bits = _base_ideal(L, I, "check_radical_commutes")
    lhs = radical(L.structure, extend_ideal(L, bits)).bits
    rhs = extend_ideal(L, radical(L.base, bits)).bits
    ok = lhs == rhs
    return TheoremVerdict(
        "radical-commutes", _instance(L, ideal=bits), ok,
        None if ok else {"radical-of-extension": members(lhs), "extension-of-radical": members(rhs)},
    )
