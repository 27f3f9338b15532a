# core/suite.py
"""
Theorem-suite driver.

Every corpus structure becomes one job; a job runs each per-instance check
over all hyperideals, multiplicative subsets and corpus targets and returns
its verdict records in a fixed order. Jobs may run in a process pool; the
report is assembled in corpus order so the comparable body is identical
between runs.
"""
from __future__ import annotations

import json
import logging
import time
from datetime import datetime
from multiprocessing import Pool
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from tqdm import tqdm

from .bitset import full_mask, members
from .config import CFG
from .corpus import CorpusEntry, CorpusSpec, build_corpus
from .domain import CheckReport, KrasnerStructure, TheoremVerdict, ValidationReport
from .errors import CapExceededError, KrasnerError
from .ideals import (
    enumerate_hyperideals, enumerate_multiplicative, is_hyperideal, is_hyperintegral_domain,
    is_primary, is_prime, is_prime_by_ideals, is_two_absorbing, radical,
)
from .localization import (
    build_localization, check_domain_preserved, check_equivalence_laws,
    check_field_of_fractions, check_fraction_identities, compare_relation_forms,
    is_invertible, natural_map,
)
from .morphisms import check_universal_property, enumerate_homomorphisms, find_isomorphism, is_homomorphism
from .quotients import build_quotient, check_quotient_fraction_iso, projection_map
from .structure import validate_structure
from .transport import (
    check_all_extended, check_contract_extend, check_local_maximal, check_primary_preserved,
    check_prime_preserved, check_radical_commutes, check_two_absorbing_preserved,
    check_unit_criterion,
)

logger = logging.getLogger(__name__)

Status = Literal["pass", "fail", "skip", "adjudicate"]


class VerdictRecord(BaseModel):
    theorem: str
    structure: str
    instance: Dict[str, Any] = Field(default_factory=dict)
    status: Status
    counterexample: Optional[Dict[str, Any]] = None
    detail: str = ""


class SuiteBody(BaseModel):
    corpus: str
    caps: Dict[str, int]
    records: List[VerdictRecord] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    body: SuiteBody
    meta: Dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.body.counts.get("fail", 0) == 0

    def comparable_json(self) -> str:
        """The body only: no timestamps, sorted keys."""
        return json.dumps(self.body.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


# Config fields a worker process must see as the parent does.
_SHARED_FIELDS = ("allow_weak", "relation_form", "primary_quantifier", "homs_preserve_one",
                  "hom_search_cap", "max_card", "max_arity")


def _from_check(theorem: str, structure: str, instance: Dict[str, Any], report: CheckReport) -> VerdictRecord:
    if report.ok:
        return VerdictRecord(theorem=theorem, structure=structure, instance=instance, status="pass")
    first = next(c for c in report.checks if not c.passed)
    return VerdictRecord(
        theorem=theorem, structure=structure, instance=instance, status="fail",
        counterexample={"check": first.axiom,
                        "tuple": list(first.counterexample) if first.counterexample is not None else None},
        detail=first.detail,
    )


def _from_theorem(structure: str, verdict: TheoremVerdict) -> VerdictRecord:
    return VerdictRecord(
        theorem=verdict.theorem, structure=structure, instance=verdict.instance,
        status="pass" if verdict.passed else "fail",
        counterexample=verdict.counterexample, detail=verdict.detail,
    )


class _Recorder:
    """Collects records for one structure; errors become fail or skip records."""

    def __init__(self, S: KrasnerStructure):
        self.S = S
        self.records: List[VerdictRecord] = []

    def add(self, theorem: str, instance: Dict[str, Any], status: Status,
            counterexample: Optional[Dict[str, Any]] = None, detail: str = "") -> None:
        self.records.append(VerdictRecord(
            theorem=theorem, structure=self.S.name, instance=instance, status=status,
            counterexample=counterexample, detail=detail,
        ))

    def run(self, theorem: str, instance: Dict[str, Any], check: Callable[[], Any]) -> Any:
        try:
            out = check()
        except CapExceededError as e:
            self.add(theorem, instance, "skip", detail=str(e))
            return None
        except KrasnerError as e:
            self.add(theorem, instance, "fail", {"error": type(e).__name__}, str(e))
            return None
        if isinstance(out, TheoremVerdict):
            self.records.append(_from_theorem(self.S.name, out))
        elif isinstance(out, CheckReport):
            self.records.append(_from_check(theorem, self.S.name, instance, out))
        elif isinstance(out, bool):
            self.add(theorem, instance, "pass" if out else "fail")
        return out


def _radical_laws(S: KrasnerStructure, I: int) -> bool:
    """rad(I) is a hyperideal containing I, and rad(rad(I)) = rad(I)."""
    rad = radical(S, I).bits
    return rad & I == I and is_hyperideal(S, rad) and radical(S, rad).bits == rad


def _ideal_checks(rec: _Recorder, S: KrasnerStructure, ideals: List[int]) -> None:
    full = full_mask(S.card)
    for I in ideals:
        inst = {"ideal": members(I)}
        rec.run("radical-laws", inst, lambda: _radical_laws(S, I))
        if I == full:
            continue
        rec.run("prime-forms-agree", inst, lambda: is_prime(S, I) == is_prime_by_ideals(S, I))
        if is_prime(S, I):
            rec.run("prime-classification", inst, lambda: (
                is_primary(S, I) and is_two_absorbing(S, I) and radical(S, I).bits == I
            ))
            rec.run("local-maximal", {"prime": members(I)}, lambda: check_local_maximal(S, I))


def _universal_checks(rec: _Recorder, S: KrasnerStructure, L, sbits: int,
                      targets: Sequence[KrasnerStructure], homs_to: Dict[str, Any]) -> None:
    for B in targets:
        inst = {"subset": members(sbits), "target": B.name}
        if B.name not in homs_to:
            homs_to[B.name] = rec.run("homomorphism-search", {"target": B.name},
                                      lambda: enumerate_homomorphisms(S, B))
        homs = homs_to[B.name]
        if homs is None:
            continue
        for k in homs:
            if all(is_invertible(B, k(s)) is not None for s in members(sbits)):
                rec.run("universal-property", {**inst, "map": list(k.image)},
                        lambda: check_universal_property(S, sbits, B, k, L))


def _localization_checks(rec: _Recorder, S: KrasnerStructure, ideals: List[int],
                         targets: Sequence[KrasnerStructure]) -> None:
    full = full_mask(S.card)
    domain = is_hyperintegral_domain(S)
    homs_to: Dict[str, Any] = {}
    for Sset in enumerate_multiplicative(S):
        sbits = Sset.bits
        inst = {"subset": members(sbits)}
        if not S.arity.localizable:
            rec.add("localization", inst, "skip", detail=f"n={S.n} < m={S.m}")
            continue
        laws = rec.run("equivalence-laws", inst, lambda: check_equivalence_laws(S, sbits))
        if laws is None or not laws.ok:
            continue
        differ = compare_relation_forms(S, sbits)
        rec.add("relation-forms", inst, "pass",
                detail=f"display form differs on {len(differ)} pairs, first {differ[0]}" if differ
                else "forms agree")

        L = rec.run("localization", inst, lambda: build_localization(S, sbits))
        if L is None:
            continue
        rec.add("localization-valid", inst, "pass" if L.report.mode == "strict" else "adjudicate",
                detail=f"{len(L.classes)} classes, {L.report.mode} mode")
        rec.run("fraction-identities", inst, lambda: check_fraction_identities(L))
        rec.run("natural-map-hom", inst, lambda: bool(is_homomorphism(natural_map(L), S, L.structure)))
        rec.run("all-extended", inst, lambda: check_all_extended(L))
        if domain and not (sbits >> S.zero) & 1:
            rec.run("domain-preserved", inst, lambda: check_domain_preserved(L))

        for I in ideals:
            iinst = {**inst, "ideal": members(I)}
            rec.run("unit-criterion", iinst, lambda: check_unit_criterion(L, I))
            rec.run("contract-extend", iinst, lambda: check_contract_extend(L, I))
            rec.run("radical-commutes", iinst, lambda: check_radical_commutes(L, I))
            if I == full or I & sbits:
                continue
            if is_prime(S, I):
                rec.run("prime-preserved", iinst, lambda: check_prime_preserved(L, I))
            if is_primary(S, I):
                rec.run("primary-preserved", iinst, lambda: check_primary_preserved(L, I))
            if is_two_absorbing(S, I):
                rec.run("two-absorbing-preserved", iinst, lambda: check_two_absorbing_preserved(L, I))

        _universal_checks(rec, S, L, sbits, targets, homs_to)


def _quotient_checks(rec: _Recorder, S: KrasnerStructure, ideals: List[int]) -> None:
    for I in ideals:
        inst = {"ideal": members(I)}
        Q = rec.run("quotient", inst, lambda: build_quotient(S, I))
        if Q is None:
            continue
        rec.add("quotient-valid", inst, "pass" if Q.report.mode == "strict" else "adjudicate",
                detail=f"{len(Q.cosets)} cosets, {Q.report.mode} mode")
        rec.run("projection-hom", inst, lambda: bool(is_homomorphism(projection_map(Q), S, Q.structure)))
        if I == 1 << S.zero:
            rec.run("quotient-by-zero-iso", inst, lambda: find_isomorphism(Q.structure, S) is not None)
        if not S.arity.localizable:
            continue
        for Sset in enumerate_multiplicative(S):
            if Sset.bits & I:
                continue
            rec.run("quotient-fraction-iso", {**inst, "subset": Sset.members()},
                    lambda: check_quotient_fraction_iso(S, Sset.bits, I))


def _cached_report(S: KrasnerStructure, mode: str) -> ValidationReport:
    report = S._cache.get(mode)
    if report is None:
        report = S._cache[mode] = validate_structure(S, mode, max_card=S.card)
    return report


def _adjudicated_checks(rec: _Recorder, S: KrasnerStructure) -> None:
    """Fraction relation and localization of a weak-only structure, recorded as findings."""
    if not S.arity.localizable:
        return
    for Sset in enumerate_multiplicative(S):
        sbits = Sset.bits
        inst = {"subset": members(sbits)}
        laws = check_equivalence_laws(S, sbits)
        if not laws.ok:
            first = next(c for c in laws.checks if not c.passed)
            rec.add("equivalence-laws", inst, "adjudicate",
                    {"check": first.axiom, "tuple": list(first.counterexample)}, first.detail)
            continue
        rec.add("equivalence-laws", inst, "pass")
        try:
            L = build_localization(S, sbits, allow_weak=True)
        except KrasnerError as e:
            rec.add("localization-valid", inst, "adjudicate", {"error": type(e).__name__}, str(e))
            continue
        rec.add("localization-valid", inst, "pass" if L.report.mode == "strict" else "adjudicate",
                detail=f"{len(L.classes)} classes, {L.report.mode} mode")


def check_structure(entry: CorpusEntry, targets: Sequence[KrasnerStructure]) -> List[VerdictRecord]:
    S = entry.structure
    rec = _Recorder(S)
    if not entry.within_caps:
        rec.add("validate", {}, "skip", detail=f"{S.card} elements / arity ({S.m},{S.n}) over caps")
        return rec.records

    try:
        strict = _cached_report(S, "strict")
    except CapExceededError as e:
        rec.add("validate", {}, "skip", detail=str(e))
        return rec.records
    if strict.ok:
        rec.add("validate", {"mode": "strict"}, "pass")
    else:
        first = next(c for c in strict.checks if not c.passed)
        weak = _cached_report(S, "weak")
        rec.add(
            "validate", {"mode": "strict"},
            "adjudicate" if entry.expect_adjudicate else "fail",
            {"axiom": first.axiom,
             "tuple": list(first.counterexample) if first.counterexample is not None else None,
             "failed": list(strict.failed)},
            f"{first.detail}; weak mode {'passes' if weak.ok else 'fails'}",
        )
        if not (CFG.allow_weak and weak.ok):
            if entry.expect_adjudicate and weak.ok:
                _adjudicated_checks(rec, S)
            rec.add("theorem-suite", {}, "skip", detail="structure is not strictly valid")
            return rec.records

    ideals = [J.bits for J in enumerate_hyperideals(S)]
    _ideal_checks(rec, S, ideals)
    _localization_checks(rec, S, ideals, [B for B in targets if B.arity == S.arity])
    _quotient_checks(rec, S, ideals)

    if is_hyperintegral_domain(S) and S.arity.localizable:
        rec.run("field-of-fractions", {}, lambda: check_field_of_fractions(S))
    return rec.records


def _job(args: Tuple[CorpusEntry, List[KrasnerStructure], Dict[str, Any]]) -> List[VerdictRecord]:
    entry, targets, shared = args
    for key, value in shared.items():
        setattr(CFG, key, value)
    return check_structure(entry, targets)


def _strictly_valid(S: KrasnerStructure) -> bool:
    try:
        return _cached_report(S, "strict").ok
    except CapExceededError:
        return False


def run_theorem_suite(
    corpus: CorpusSpec,
    label: str = "corpus",
    workers: Optional[int] = None,
    progress: Optional[bool] = None,
    session=None,
) -> SuiteReport:
    workers = CFG.workers if workers is None else workers
    progress = CFG.progress if progress is None else progress
    started = time.perf_counter()

    entries = build_corpus(corpus)
    targets = [e.structure for e in entries
               if e.within_caps and not e.expect_adjudicate and _strictly_valid(e.structure)]
    shared = {key: getattr(CFG, key) for key in _SHARED_FIELDS}
    jobs = [(e, targets, shared) for e in entries]
    if session is not None:
        session.log_suite_start(label, len(entries), workers)

    results: List[List[VerdictRecord]] = []
    bar = tqdm(total=len(jobs), desc="suite", unit="structure", disable=not progress)
    if workers > 1 and len(jobs) > 1:
        with Pool(processes=workers) as pool:
            for records in pool.imap(_job, jobs):
                results.append(records)
                bar.update(1)
    else:
        for job in jobs:
            results.append(check_structure(job[0], job[1]))
            bar.update(1)
    bar.close()

    records = [r for batch in results for r in batch]
    counts = {status: 0 for status in ("pass", "fail", "skip", "adjudicate")}
    for r in records:
        counts[r.status] += 1
    body = SuiteBody(
        corpus=label,
        caps={"max_card": corpus.max_card, "max_m": corpus.max_m, "max_n": corpus.max_n},
        records=records,
        counts=counts,
    )
    report = SuiteReport(body=body, meta={
        "finished": datetime.now().isoformat(timespec="seconds"),
        "seconds": round(time.perf_counter() - started, 3),
        "workers": workers,
    })
    if session is not None:
        for r in records:
            session.log_verdict(r)
        session.finalize(report)
    logger.info(f"suite '{label}': {counts}")
    return report
