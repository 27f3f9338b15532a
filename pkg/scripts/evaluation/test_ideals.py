"""Hyperideal enumeration and classification against modular arithmetic."""
from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

import classical_oracle as oracle
from core.bitset import full_mask, mask_of
from core.corpus import generate_krasner_hyperfield, generate_ring_embedding
from core.errors import UsageError
from core.ideals import (
    classify, enumerate_hyperideals, enumerate_multiplicative, is_hyperideal,
    is_hyperintegral_domain, is_maximal, is_multiplicative, is_primary, is_prime,
    is_prime_by_ideals, is_two_absorbing, power_radical, radical,
)
from core.io import load_structure

ANCHORS = [2, 3, 4, 5, 6]


def _sets(masks):
    return {frozenset(J.members()) for J in masks}


def test_z6_hyperideals(z6):
    assert [J.members() for J in enumerate_hyperideals(z6)] == [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]


@pytest.mark.parametrize("k", ANCHORS)
def test_ideals_match_oracle(k):
    S = generate_ring_embedding(k)
    assert _sets(enumerate_hyperideals(S)) == set(oracle.ideals(k))


@pytest.mark.parametrize("k", ANCHORS)
def test_classification_matches_oracle(k):
    S = generate_ring_embedding(k)
    for I in oracle.ideals(k):
        if len(I) == k:
            continue
        bits = mask_of(I)
        assert is_prime(S, bits) == oracle.is_prime(k, I), I
        assert is_maximal(S, bits) == oracle.is_maximal(k, I), I
        assert is_primary(S, bits) == oracle.is_primary(k, I), I
        assert is_two_absorbing(S, bits) == oracle.is_two_absorbing(k, I), I
        assert frozenset(radical(S, bits).members()) == oracle.radical(k, I), I


@pytest.mark.parametrize("k", ANCHORS)
def test_multiplicative_subsets_match_oracle(k):
    S = generate_ring_embedding(k)
    assert _sets(enumerate_multiplicative(S)) == set(oracle.multiplicative_subsets(k))


def test_zero_ideal_of_z6(z6):
    zero = mask_of([0])
    assert not is_prime(z6, zero)
    assert not is_primary(z6, zero)
    assert is_two_absorbing(z6, zero)


def test_zero_ideal_of_z8_is_not_two_absorbing():
    assert not is_two_absorbing(generate_ring_embedding(8), mask_of([0]))


def test_prime_forms_agree_on_anchors():
    for k in ANCHORS:
        S = generate_ring_embedding(k)
        for J in enumerate_hyperideals(S):
            if J.bits != full_mask(k):
                assert is_prime(S, J) == is_prime_by_ideals(S, J)


def test_power_radical_inside_radical():
    S = generate_ring_embedding(8)
    zero = mask_of([0])
    assert power_radical(S, zero).members() == [0, 2, 4, 6]
    assert radical(S, zero).members() == [0, 2, 4, 6]


def test_radical_of_whole_ring_is_whole_ring(z6):
    assert radical(z6, full_mask(6)).bits == full_mask(6)


def test_primary_quantifiers_differ_only_in_strength(z6):
    for J in enumerate_hyperideals(z6):
        if J.bits == full_mask(6):
            continue
        if is_primary(z6, J, "universal"):
            assert is_primary(z6, J, "existential")


def test_predicates_require_a_proper_hyperideal(z6):
    with pytest.raises(UsageError):
        is_prime(z6, mask_of([0, 1]))
    with pytest.raises(UsageError):
        is_prime(z6, full_mask(6))
    with pytest.raises(UsageError):
        is_hyperideal(z6, 0)


def test_classify(z6):
    verdict = classify(z6, mask_of([0, 2, 4]))
    assert verdict["prime"] and verdict["maximal"] and verdict["primary"]
    assert not verdict["multiplicative"]
    assert classify(z6, mask_of([1, 5]))["multiplicative"]
    assert not classify(z6, mask_of([1, 5]))["hyperideal"]


def test_hyperintegral_domains():
    assert is_hyperintegral_domain(generate_ring_embedding(5))
    assert not is_hyperintegral_domain(generate_ring_embedding(6))
    assert is_hyperintegral_domain(generate_krasner_hyperfield())


def test_sample_ideals(paper_path):
    S = load_structure(paper_path)
    assert is_multiplicative(S, mask_of([1, 2]))
    assert is_prime(S, mask_of([0]))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.data())
def test_hyperideal_intersection_closure(k, data):
    S = generate_ring_embedding(k)
    ideals = enumerate_hyperideals(S)
    I = data.draw(st.sampled_from(ideals))
    J = data.draw(st.sampled_from(ideals))
    assert is_hyperideal(S, I.bits & J.bits)
