"""Theorem-suite driver and its report."""
from __future__ import annotations

import json

import pytest

from core.corpus import load_corpus, parse_corpus
from core.errors import FormatError
from core.logger import SuiteLogger
from core.suite import VerdictRecord, run_theorem_suite

from conftest import DATASETS


@pytest.fixture(scope="module")
def anchor_report():
    return run_theorem_suite(load_corpus(DATASETS / "anchors.corpus"), label="anchors", progress=False)


def test_anchor_corpus_is_green(anchor_report):
    counts = anchor_report.body.counts
    failed = [r for r in anchor_report.body.records if r.status != "pass"]
    assert counts["fail"] == 0, failed[:3]
    assert counts["skip"] == 0, failed[:3]
    assert counts["adjudicate"] == 0
    assert anchor_report.ok


def test_anchor_corpus_covers_every_theorem(anchor_report):
    seen = {r.theorem for r in anchor_report.body.records}
    assert {
        "validate", "equivalence-laws", "localization-valid", "fraction-identities",
        "unit-criterion", "all-extended", "contract-extend", "radical-commutes",
        "prime-preserved", "primary-preserved", "two-absorbing-preserved",
        "local-maximal", "quotient-fraction-iso", "universal-property",
        "domain-preserved", "field-of-fractions", "quotient-by-zero-iso",
    } <= seen


def test_report_body_is_deterministic():
    corpus = parse_corpus("ring Z 2\nring Z 4\n")
    first = run_theorem_suite(corpus, progress=False).comparable_json()
    second = run_theorem_suite(parse_corpus("ring Z 2\nring Z 4\n"), progress=False).comparable_json()
    assert first == second
    assert "finished" not in first


def test_worker_pool_gives_the_same_body():
    text = "ring Z 2\nring Z 3\nring Z 4\n"
    serial = run_theorem_suite(parse_corpus(text), progress=False, workers=1)
    pooled = run_theorem_suite(parse_corpus(text), progress=False, workers=2)
    assert serial.comparable_json() == pooled.comparable_json()


def test_empty_corpus():
    report = run_theorem_suite(parse_corpus(""), progress=False)
    assert report.body.records == []
    assert report.ok


def test_sample_is_adjudicated():
    corpus = parse_corpus("file paper_33.khr expect: adjudicate\n", DATASETS)
    report = run_theorem_suite(corpus, progress=False)
    first = report.body.records[0]
    assert first.status == "adjudicate"
    assert first.counterexample["axiom"] == "distributive"
    assert first.counterexample["tuple"] == [0, 1, 2, 0, 1, 2]
    assert "weak mode passes" in first.detail
    assert report.ok


def test_untagged_weak_structure_is_refused():
    corpus = parse_corpus("\nfile paper_33.khr\n", DATASETS)
    with pytest.raises(FormatError, match="line 2"):
        run_theorem_suite(corpus, progress=False)


def test_adjudicated_example_records_fractions():
    corpus = parse_corpus("file paper_33.khr expect: adjudicate\n", DATASETS)
    records = run_theorem_suite(corpus, progress=False).body.records
    laws = {tuple(r.instance["subset"]): r for r in records if r.theorem == "equivalence-laws"}
    assert laws[(1, 2)].status == "adjudicate"
    assert laws[(1, 2)].counterexample == {"check": "transitive", "tuple": [1, 1, 2, 2, 1, 2]}
    assert laws[(1,)].status == "pass"
    assert records[-1].theorem == "theorem-suite"


def test_adjudicated_report_matches_golden():
    report = run_theorem_suite(load_corpus(DATASETS / "paper.corpus"), label="paper.corpus", progress=False)
    golden = json.loads((DATASETS / "paper_33.golden.json").read_text(encoding="utf-8"))
    assert json.loads(report.comparable_json()) == golden
    assert report.ok


def test_structures_over_caps_are_skipped():
    report = run_theorem_suite(parse_corpus("cap max-card 3\nring Z 4\n"), progress=False)
    assert [r.status for r in report.body.records] == ["skip"]


def test_session_logs(tmp_path):
    session = SuiteLogger(session_id="test", logs_dir=tmp_path)
    report = run_theorem_suite(parse_corpus("ring Z 2\n"), label="z2", progress=False, session=session)
    root = tmp_path / "session_test"
    rows = (root / "theorems" / "verdicts.csv").read_text(encoding="utf-8").splitlines()
    assert len(rows) == len(report.body.records) + 1
    summary = json.loads((root / "session_summary.json").read_text(encoding="utf-8"))
    assert summary["corpus"] == "z2"
    assert summary["statistics"]["theorems"]["pass"] == report.body.counts["pass"]
    assert (root / "run_report.md").exists()


def test_verdict_record_json():
    r = VerdictRecord(theorem="unit-criterion", structure="Z6", instance={"ideal": [0, 3]}, status="pass")
    assert r.model_dump(mode="json")["counterexample"] is None
