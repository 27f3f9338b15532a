"""Structure file format: parsing, expansion and serialization."""
from __future__ import annotations

import pytest

from core.bitset import full_mask, mask_of
from core.corpus import generate_ring_embedding, generate_sign_hyperfield
from core.errors import FormatError
from core.io import (
    load_structure, parse_structure, read_structure_file, serialize_localization,
    serialize_quotient, serialize_structure, to_structure,
)
from core.localization import build_localization
from core.quotients import build_quotient

HEADER = "khr 1\nname tiny\nm 2  n 2  card 2\nzero 0  one 1\nflags commutative\n"
TINY = HEADER + "f 0 0 : 0\nf 0 1 : 1\nf 1 1 : 0\ng 0 * : 0\ng 1 1 : 1\n"


def test_sample_tables(paper_path):
    sf = read_structure_file(paper_path)
    assert (sf.name, sf.m, sf.n, sf.card, sf.zero, sf.one) == ("paper_33", 3, 3, 3, 0, 1)
    assert sf.commutative
    assert sf.f_entries[(1, 1, 2)] == full_mask(3)
    assert sf.f_entries[(2, 1, 1)] == full_mask(3)
    assert sf.g_entries[(1, 1, 1)] == 1
    assert sf.g_entries[(2, 0, 1)] == 0
    assert sf.g_entries[(2, 1, 2)] == 2


def test_tiny_is_z2():
    S = to_structure(parse_structure(TINY))
    assert S.same_tables(generate_ring_embedding(2))


def test_specific_entries_win_over_wildcards():
    text = HEADER + "f * * : 1\nf 0 0 : 0\nf 1 1 : 0\ng * * : 0\ng 1 1 : 1\n"
    S = to_structure(parse_structure(text))
    assert S.same_tables(generate_ring_embedding(2))


def test_missing_entry_is_named():
    with pytest.raises(FormatError, match=r"no entry for f\(1, 1\)"):
        parse_structure(HEADER + "f 0 0 : 0\nf 0 1 : 1\ng 0 * : 0\ng 1 1 : 1\n")


def test_conflicting_entries():
    with pytest.raises(FormatError) as exc:
        parse_structure(TINY + "f 1 0 : 0\n")
    assert "commutativity" in str(exc.value)


def test_bad_magic_has_line_number():
    with pytest.raises(FormatError) as exc:
        parse_structure("# header\nkrh 1\n")
    assert exc.value.line == 2


@pytest.mark.parametrize("line", ["f 0 : 0", "f 0 2 : 0", "g 0 0 : 0 1", "m 3", "bogus 1"])
def test_malformed_lines(line):
    with pytest.raises(FormatError):
        parse_structure(TINY + line + "\n")


def test_serialization_is_byte_stable():
    for S in (generate_ring_embedding(6), generate_sign_hyperfield(3, 3)):
        text = serialize_structure(S)
        again = to_structure(parse_structure(text))
        assert again.same_tables(S)
        assert serialize_structure(again) == text


def test_localization_file_has_class_sidecar(z6, tmp_path):
    L = build_localization(z6, mask_of([1, 3, 5]))
    text = serialize_localization(L)
    assert "class 1 : 1/1 1/3 1/5 3/1" in text
    path = tmp_path / "z6_odd.khr"
    path.write_text(text, encoding="utf-8")
    sf = read_structure_file(path)
    assert sf.card == 2
    assert sf.classes[0][0] == (0, 1)
    assert load_structure(path).same_tables(L.structure)


def test_quotient_file_has_coset_sidecar(z6):
    Q = build_quotient(z6, mask_of([0, 3]))
    sf = parse_structure(serialize_quotient(Q))
    assert sf.cosets == {0: [0, 3], 1: [1, 4], 2: [2, 5]}


def test_unreadable_file(tmp_path):
    with pytest.raises(FormatError):
        load_structure(tmp_path / "missing.khr")
