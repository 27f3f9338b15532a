"""Fraction relation, S^-1 R construction and the fraction identities."""
from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

import classical_oracle as oracle
from core.bitset import mask_of
from core.corpus import generate_ring_embedding
from core.errors import EquivalenceLawError, HypothesisError, InvariantViolation, NotStrictError, UsageError
from core.ideals import enumerate_multiplicative
from core.io import load_structure
from core.localization import (
    build_localization, check_domain_preserved, check_equivalence_laws,
    check_field_of_fractions, check_fraction_identities, compare_relation_forms,
    fraction_equivalent, is_invertible, natural_map,
)
from core.morphisms import find_isomorphism, is_homomorphism
from core.structure import validate_constructed

ODD = mask_of([1, 3, 5])


def test_z6_at_odd_elements(z6, z2):
    L = build_localization(z6, ODD)
    assert len(L.classes) == 2
    assert L.report.ok
    assert find_isomorphism(L.structure, z2) is not None
    assert L.structure.name == "Z6.S1-3-5"


def test_relation_returns_least_witness(z6):
    eq = fraction_equivalent(z6, ODD, (1, 1), (3, 1))
    assert eq
    assert eq.witness == 3
    assert not fraction_equivalent(z6, ODD, (1, 1), (0, 1))


def test_relation_rejects_foreign_denominator(z6):
    with pytest.raises(UsageError):
        fraction_equivalent(z6, ODD, (1, 2), (1, 1))


def test_zero_class_comes_first(z6):
    L = build_localization(z6, ODD)
    assert L.zero_class == 0
    assert L.classes[0].canonical == (0, 1)
    assert L.fraction(2, 5) == L.zero_class
    assert L.fraction(5, 5) == L.one_class


def test_invertible_elements(z6):
    assert is_invertible(z6, 5) == 5
    assert is_invertible(z6, 2) is None


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_every_localization_of_anchor(k):
    S = generate_ring_embedding(k)
    for Sset in enumerate_multiplicative(S):
        assert check_equivalence_laws(S, Sset).ok
        L = build_localization(S, Sset)
        assert len(L.classes) == oracle.fraction_class_count(k, frozenset(Sset.members()))
        assert L.report.ok, Sset
        assert check_fraction_identities(L).ok, Sset
        assert is_homomorphism(natural_map(L), S, L.structure)


def test_subset_with_zero_collapses(z6):
    L = build_localization(z6, mask_of([0, 1]))
    assert len(L.classes) == 1


def test_relation_forms_differ_on_z3():
    S = generate_ring_embedding(3)
    differ = compare_relation_forms(S, mask_of([1]))
    assert ((1, 1), (2, 1)) in differ


def test_display_form_is_not_an_equivalence_on_z3():
    S = generate_ring_embedding(3)
    report = check_equivalence_laws(S, mask_of([1]), form="display")
    assert report.failed[0] == "reflexive"
    with pytest.raises(EquivalenceLawError) as exc:
        build_localization(S, mask_of([1]), form="display")
    assert exc.value.law == "reflexive"


def test_non_multiplicative_subset_is_refused(z6):
    with pytest.raises(UsageError):
        build_localization(z6, mask_of([1, 2]))


def test_localization_needs_n_at_least_m():
    S = generate_ring_embedding(3, m=3, n=2)
    with pytest.raises(UsageError):
        build_localization(S, mask_of([1]))


def test_field_of_fractions_of_z5():
    report = check_field_of_fractions(generate_ring_embedding(5))
    assert report.ok
    assert report.get("nonzero-invertible").passed
    assert report.get("hyperintegral-domain").passed


def test_field_of_fractions_needs_a_domain(z6):
    with pytest.raises(UsageError):
        check_field_of_fractions(z6)


def test_domain_preserved():
    S = generate_ring_embedding(5)
    assert check_domain_preserved(build_localization(S, mask_of([1, 4])))


def test_domain_preserved_needs_a_domain(z6):
    with pytest.raises(HypothesisError) as exc:
        check_domain_preserved(build_localization(z6, ODD))
    assert exc.value.hypothesis == "domain"


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 7), st.data())
def test_class_count_matches_oracle(k, data):
    S = generate_ring_embedding(k)
    Sset = data.draw(st.sampled_from(enumerate_multiplicative(S)))
    L = build_localization(S, Sset)
    assert len(L.classes) == oracle.fraction_class_count(k, frozenset(Sset.members()))


def test_weak_only_base_needs_allow_weak(paper_path):
    S = load_structure(paper_path)
    with pytest.raises(NotStrictError):
        build_localization(S, mask_of([1]))


def test_localization_of_weak_only_base_is_weak(paper_path):
    S = load_structure(paper_path)
    L = build_localization(S, mask_of([1]), allow_weak=True)
    assert len(L.classes) == 3
    assert L.report.ok
    assert L.report.mode == "weak"
    assert (L.structure.f == S.f).all() and (L.structure.g == S.g).all()


def test_constructed_structure_must_be_strict(paper_path):
    S = load_structure(paper_path)
    with pytest.raises(InvariantViolation, match="distributive"):
        validate_constructed(S, allow_weak=False)
    assert validate_constructed(S, allow_weak=True).mode == "weak"


def test_weak_example_relation_is_not_transitive(paper_path):
    S = load_structure(paper_path)
    laws = check_equivalence_laws(S, mask_of([1, 2]))
    assert laws.failed == ("transitive",)
    assert laws.get("transitive").counterexample == (1, 1, 2, 2, 1, 2)
    with pytest.raises(EquivalenceLawError):
        build_localization(S, mask_of([1, 2]), allow_weak=True)
