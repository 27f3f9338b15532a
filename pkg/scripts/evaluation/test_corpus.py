"""Generators and corpus files."""
from __future__ import annotations

import pytest

from core.bitset import mask_of
from core.config import CFG
from core.corpus import (
    build_corpus, generate_product_ring, generate_ring_embedding, load_corpus,
    parse_corpus, relabel,
)
from core.errors import FormatError, UsageError
from core.structure import eval_f, eval_g

from conftest import DATASETS


def test_ring_embedding_tables():
    S = generate_ring_embedding(6)
    assert S.name == "Z6"
    assert eval_f(S, (4, 5)) == mask_of([3])
    assert eval_g(S, (4, 5)) == 2
    assert generate_ring_embedding(3, 3, 3).name == "Z3_33"


@pytest.mark.parametrize("k", [1, 65])
def test_ring_embedding_range(k):
    with pytest.raises(UsageError):
        generate_ring_embedding(k)


@pytest.mark.parametrize("k, m", [(2, 3), (4, 3), (6, 4), (3, 4)])
def test_derived_ring_needs_unique_scalar_neutral(k, m):
    with pytest.raises(UsageError, match="scalar neutral"):
        generate_ring_embedding(k, m, m)


def test_product_ring_encoding():
    S = generate_product_ring(2, 3)
    # (1, 2) * (1, 2) = (1, 1), stored as a * 3 + b
    assert eval_g(S, (5, 5)) == 4
    assert S.one == 4


def test_relabel_rejects_non_permutations(z6):
    with pytest.raises(UsageError):
        relabel(z6, [0, 0, 1, 2, 3, 4])


def test_parse_corpus_directives():
    spec = parse_corpus("ring Z 6\nring Z 3 m 3 n 3  # derived\nhyperfield sign\ntrivial\ncap max-card 5\n")
    assert [d.kind for d in spec.directives] == ["ring", "ring", "sign", "trivial"]
    assert spec.directives[1].args == (3, 3, 3)
    assert spec.max_card == 5


def test_caps_flag_entries_without_dropping():
    entries = build_corpus(parse_corpus("cap max-card 4\nring Z 4\nring Z 5\n"))
    assert [e.within_caps for e in entries] == [True, False]


def test_bad_directive_reports_line():
    with pytest.raises(FormatError) as exc:
        parse_corpus("ring Z 2\nring Q 3\n")
    assert exc.value.line == 2


def test_generator_errors_become_format_errors():
    with pytest.raises(FormatError) as exc:
        build_corpus(parse_corpus("\nring Z 99\n"))
    assert exc.value.line == 2


def test_shipped_corpora():
    anchors = build_corpus(load_corpus(DATASETS / "anchors.corpus"))
    assert [e.structure.name for e in anchors] == ["Z2", "Z3", "Z4", "Z5", "Z6"]
    hyper = build_corpus(load_corpus(DATASETS / "hyper.corpus"))
    sample = [e for e in hyper if e.expect_adjudicate]
    assert [e.structure.name for e in sample] == ["paper_33"]


def test_entries_are_validated_when_built():
    entries = build_corpus(parse_corpus("ring Z 4\nhyperfield sign\n"))
    assert all(e.structure._cache["strict"].ok for e in entries)


def test_weak_only_file_needs_a_tag():
    with pytest.raises(FormatError) as exc:
        build_corpus(parse_corpus("ring Z 2\nfile paper_33.khr\n", DATASETS))
    assert exc.value.line == 2
    assert "distributive" in str(exc.value)
    tagged = build_corpus(parse_corpus("file paper_33.khr expect: adjudicate\n", DATASETS))
    assert tagged[0].expect_adjudicate


def test_weak_only_file_is_accepted_with_allow_weak():
    CFG.allow_weak = True
    entries = build_corpus(parse_corpus("file paper_33.khr\n", DATASETS))
    assert entries[0].structure._cache["weak"].ok


def test_derived_ring_without_unique_neutral_is_a_format_error():
    with pytest.raises(FormatError) as exc:
        build_corpus(parse_corpus("ring Z 4 m 3 n 3\n"))
    assert exc.value.line == 1
