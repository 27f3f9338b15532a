"""Command surface and exit codes."""
from __future__ import annotations

import json

import pytest

from core.cli import main, parse_pairs
from core.config import CFG
from core.corpus import generate_product_ring, generate_ring_embedding
from core.errors import UsageError
from core.io import parse_structure, serialize_structure, to_structure, write_text

from conftest import DATASETS


@pytest.fixture
def files(tmp_path):
    out = {}
    for S in (generate_ring_embedding(2), generate_ring_embedding(4), generate_ring_embedding(6),
              generate_product_ring(2, 2)):
        out[S.name] = str(write_text(tmp_path / f"{S.name}.khr", serialize_structure(S)))
    return out


def run(*argv):
    return main(["--no-progress", *argv])


def test_validate_exit_codes(files, paper_path):
    assert run("validate", files["Z6"]) == 0
    assert run("validate", str(paper_path)) == 1
    assert run("validate", str(paper_path), "--weak") == 0


def test_validate_prints_counterexample(paper_path, capsys):
    run("validate", str(paper_path))
    out = capsys.readouterr().out
    assert "distributive | tuple=[0, 1, 2, 0, 1, 2]" in out


def test_ideals_and_classify(files, capsys):
    assert run("ideals", files["Z6"]) == 0
    assert "4 hyperideals" in capsys.readouterr().out
    assert run("classify", files["Z6"], "--ideal", "0,2,4") == 0
    out = capsys.readouterr().out
    assert "prime" in out and "yes" in out


def test_radical(files, capsys):
    assert run("radical", files["Z4"], "--ideal", "0") == 0
    assert "radical {0,2}" in capsys.readouterr().out


def test_localize_writes_file(files, tmp_path, capsys):
    out = tmp_path / "odd.khr"
    assert run("localize", files["Z6"], "--subset", "1,3,5", "--out", str(out)) == 0
    assert out.read_text(encoding="utf-8").startswith("khr 1\nname Z6.S1-3-5\n")
    assert "2 classes" in capsys.readouterr().out
    assert run("localize", files["Z6"], "--at-prime", "0,2,4") == 0


def test_quotient(files, capsys):
    assert run("quotient", files["Z6"], "--ideal", "0,3") == 0
    assert "coset 2 : 2 5" in capsys.readouterr().out


def test_iso(files):
    assert run("iso", files["Z4"], files["Z4"]) == 0
    assert run("iso", files["Z4"], files["Z2xZ2"]) == 1


def test_universal(files):
    pairs = "0:0,1:1,2:0,3:1,4:0,5:1"
    assert run("universal", files["Z6"], "--subset", "1,3,5", "--target", files["Z2"], "--map", pairs) == 0


def test_parse_pairs_needs_every_element():
    with pytest.raises(UsageError):
        parse_pairs("0:0,1:1", generate_ring_embedding(3))


def test_usage_errors_exit_two(files, tmp_path):
    assert run("classify", files["Z6"], "--ideal", "a,b") == 2
    assert run("localize", files["Z6"], "--subset", "1,2") == 2
    assert run("validate", str(tmp_path / "missing.khr")) == 2
    assert run("--card-cap", "4", "validate", files["Z6"]) == 2


def test_suite_json(tmp_path):
    corpus = tmp_path / "small.corpus"
    corpus.write_text("ring Z 2\nring Z 3\n", encoding="utf-8")
    report = tmp_path / "report.json"
    assert run("suite", str(corpus), "--json", str(report)) == 0
    body = json.loads(report.read_text(encoding="utf-8"))
    assert body["corpus"] == "small.corpus"
    assert body["counts"]["fail"] == 0


def test_suite_with_sample(capsys):
    assert run("suite", str(DATASETS / "hyper.corpus"), "--max-card", "3") in (0, 1)
    assert "ADJUDICATE validate on paper_33" in capsys.readouterr().out


def test_flags_override_config(files):
    run("--allow-weak", "--relation-form", "display", "ideals", files["Z2"])
    assert CFG.allow_weak and CFG.relation_form == "display"


def test_at_prime_refuses_non_prime(files, capsys):
    # 2*3 = 0 in Z6 with neither factor in {0}
    assert run("localize", files["Z6"], "--at-prime", "0") == 2
    assert "not a prime hyperideal" in capsys.readouterr().err
    assert run("localize", files["Z6"], "--at-prime", "0,1") == 2
    assert run("localize", files["Z6"], "--at-prime", "0,1,2,3,4,5") == 2
    assert run("localize", files["Z6"], "--at-prime", "0,3") == 0


def test_localize_stdout_is_a_structure_file(files, capsys):
    assert run("localize", files["Z6"], "--subset", "1,3,5") == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("khr 1\n")
    sf = parse_structure(captured.out)
    assert len(sf.classes) == 2
    assert to_structure(sf).card == 2
    assert "2 classes" in captured.err


def test_quotient_stdout_is_a_structure_file(files, capsys):
    assert run("quotient", files["Z6"], "--ideal", "0,3") == 0
    captured = capsys.readouterr()
    sf = parse_structure(captured.out)
    assert sorted(sf.cosets) == [0, 1, 2]
    assert "3 cosets" in captured.err
