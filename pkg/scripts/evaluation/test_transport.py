"""Extension and contraction of hyperideals along R -> S^-1 R."""
from __future__ import annotations

import pytest

from core.bitset import full_mask, mask_of
from core.corpus import generate_ring_embedding
from core.errors import HypothesisError, UsageError
from core.ideals import enumerate_hyperideals, enumerate_multiplicative, is_prime
from core.localization import build_localization
from core.transport import (
    check_all_extended, check_contract_extend, check_local_maximal,
    check_primary_preserved, check_prime_preserved, check_radical_commutes,
    check_two_absorbing_preserved, check_unit_criterion, contract_ideal, extend_ideal,
)

ODD = mask_of([1, 3, 5])


@pytest.fixture
def z6_odd(z6):
    return build_localization(z6, ODD)


def test_extension_of_ideal_meeting_s_is_everything(z6_odd):
    assert extend_ideal(z6_odd, mask_of([0, 3])).bits == full_mask(2)
    assert check_unit_criterion(z6_odd, mask_of([0, 3]))


def test_extension_of_disjoint_prime(z6_odd):
    E = extend_ideal(z6_odd, mask_of([0, 2, 4]))
    assert E.members() == [z6_odd.zero_class]
    assert contract_ideal(z6_odd, E).members() == [0, 2, 4]
    assert check_prime_preserved(z6_odd, mask_of([0, 2, 4]))


def test_preservation_requires_disjointness(z6_odd):
    with pytest.raises(HypothesisError) as exc:
        check_prime_preserved(z6_odd, mask_of([0, 3]))
    assert exc.value.hypothesis == "disjointness"


def test_preservation_requires_the_predicate(z6_odd):
    with pytest.raises(HypothesisError) as exc:
        check_primary_preserved(z6_odd, mask_of([0]))
    assert exc.value.hypothesis == "primary"


def test_extend_rejects_non_ideals(z6_odd):
    with pytest.raises(UsageError):
        extend_ideal(z6_odd, mask_of([0, 1]))


def test_local_maximal_at_every_prime(z6):
    for P in enumerate_hyperideals(z6):
        if P.bits != full_mask(6) and is_prime(z6, P):
            assert check_local_maximal(z6, P)


def test_local_maximal_needs_a_prime(z6):
    with pytest.raises(HypothesisError):
        check_local_maximal(z6, mask_of([0]))


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_transport_theorems_on_anchors(k):
    S = generate_ring_embedding(k)
    ideals = [J.bits for J in enumerate_hyperideals(S)]
    for Sset in enumerate_multiplicative(S):
        L = build_localization(S, Sset)
        assert check_all_extended(L)
        for I in ideals:
            assert check_unit_criterion(L, I)
            assert check_contract_extend(L, I)
            assert check_radical_commutes(L, I)


def test_two_absorbing_preserved_in_z8():
    S = generate_ring_embedding(8)
    L = build_localization(S, mask_of([1, 3, 5, 7]))
    assert check_two_absorbing_preserved(L, mask_of([0, 4]))
