"""Quotients R/I and the fractions-of-quotient isomorphism."""
from __future__ import annotations

import pytest

import classical_oracle as oracle
from core.bitset import mask_of
from core.corpus import generate_ring_embedding
from core.errors import HypothesisError, NotStrictError, UsageError
from core.ideals import enumerate_hyperideals, enumerate_multiplicative
from core.io import load_structure
from core.morphisms import find_isomorphism, is_homomorphism
from core.quotients import (
    build_quotient, check_quotient_fraction_iso, coset, projection_map, sbar,
)


def test_z6_mod_three_is_z3(z6):
    Q = build_quotient(z6, mask_of([0, 3]))
    assert len(Q.cosets) == 3
    assert [c.members for c in Q.cosets] == [mask_of([0, 3]), mask_of([1, 4]), mask_of([2, 5])]
    assert Q.report.ok
    assert find_isomorphism(Q.structure, generate_ring_embedding(3)) is not None
    assert is_homomorphism(projection_map(Q), z6, Q.structure)


def test_coset(z6):
    assert coset(z6, 4, mask_of([0, 2, 4])) == mask_of([0, 2, 4])
    assert coset(z6, 1, mask_of([0, 2, 4])) == mask_of([1, 3, 5])


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_quotient_sizes_match_oracle(k):
    S = generate_ring_embedding(k)
    for J in enumerate_hyperideals(S):
        Q = build_quotient(S, J)
        assert len(Q.cosets) == oracle.quotient_size(k, frozenset(J.members()))
        assert Q.report.ok


def test_quotient_by_zero_is_isomorphic(z6):
    Q = build_quotient(z6, mask_of([0]))
    assert find_isomorphism(Q.structure, z6) is not None


def test_quotient_needs_a_hyperideal(z6):
    with pytest.raises(UsageError):
        build_quotient(z6, mask_of([0, 1]))


def test_sbar_needs_disjointness(z6):
    Q = build_quotient(z6, mask_of([0, 3]))
    with pytest.raises(HypothesisError):
        sbar(Q, mask_of([1, 3, 5]))
    assert sbar(Q, mask_of([1, 5])).members() == [1, 2]


@pytest.mark.parametrize("k", [4, 6])
def test_fractions_of_quotient(k):
    S = generate_ring_embedding(k)
    for J in enumerate_hyperideals(S):
        for Sset in enumerate_multiplicative(S):
            if Sset.bits & J.bits:
                continue
            verdict = check_quotient_fraction_iso(S, Sset, J)
            assert verdict, (J.members(), Sset.members(), verdict.detail)


def test_quotient_of_weak_only_base(paper_path):
    S = load_structure(paper_path)
    with pytest.raises(NotStrictError):
        build_quotient(S, mask_of([0]))
    Q = build_quotient(S, mask_of([0]), allow_weak=True)
    assert len(Q.cosets) == 3
    assert Q.report.mode == "weak"
