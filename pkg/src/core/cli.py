# core/cli.py
"""
Command surface for finite Krasner hyperrings.

Usage:
    khr validate evaluation/datasets/paper_33.khr --weak
    khr localize structure.khr --subset 1,3,5 --out z6_odd.khr
    khr suite evaluation/datasets/anchors.corpus --json data/reports/anchors.json

Exit codes: 0 every verdict passed, 1 some verdict failed, 2 usage or format error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO

from .bitset import format_mask, full_mask, parse_list
from .config import CFG
from .corpus import load_corpus
from .domain import CheckReport, KrasnerStructure, MapTable
from .errors import FormatError, HypothesisError, KrasnerError, UsageError
from .ideals import classify, enumerate_hyperideals, is_hyperideal, is_prime, power_radical, radical
from .io import load_structure, serialize_localization, serialize_quotient, write_text
from .localization import build_localization
from .logger import get_suite_logger
from .morphisms import check_universal_property, find_isomorphism
from .quotients import build_quotient
from .structure import as_mask, check_caps, validate_structure
from .suite import run_theorem_suite

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def parse_pairs(text: str, source: KrasnerStructure) -> List[int]:
    """'0:0,1:1,2:0' -> image list indexed by the source carrier."""
    image: Dict[int, int] = {}
    for tok in filter(None, (t.strip() for t in text.split(","))):
        left, sep, right = tok.partition(":")
        if not sep:
            raise UsageError(f"map entry '{tok}' is not of the form x:y")
        try:
            x, y = int(left), int(right)
        except ValueError:
            raise UsageError(f"map entry '{tok}' needs integer indices") from None
        if x in image and image[x] != y:
            raise UsageError(f"map sends {x} to both {image[x]} and {y}")
        image[x] = y
    missing = [x for x in source.carrier if x not in image]
    if missing:
        raise UsageError(f"map does not cover element {missing[0]} of '{source.name}'")
    return [image[x] for x in source.carrier]


def _load(path: str) -> KrasnerStructure:
    S = load_structure(path)
    check_caps(S)
    return S


def _print_report(report: CheckReport, file: Optional[TextIO] = None) -> None:
    for c in report.checks:
        mark = "✅" if c.passed else "❌"
        line = f"  {mark} {c.axiom}"
        if not c.passed:
            line += f" | tuple={list(c.counterexample) if c.counterexample is not None else '-'}"
            if c.detail:
                line += f" | {c.detail}"
        print(line, file=file)


def _emit_table(text: str, out: Optional[str]) -> TextIO:
    """Write a table to --out or stdout; returns the stream left for status lines."""
    if out:
        print(f"💾 wrote {write_text(out, text)}")
        return sys.stdout
    sys.stdout.write(text)
    return sys.stderr


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    S = _load(args.file)
    strict = validate_structure(S, "strict")
    print(f"🧪 {S.name} ({S.m},{S.n}) card={S.card} [strict]")
    _print_report(strict)
    if strict.ok or not args.weak:
        return EXIT_OK if strict.ok else EXIT_FAIL
    weak = validate_structure(S, "weak")
    print(f"🧪 {S.name} [weak]")
    _print_report(weak)
    return EXIT_OK if weak.ok else EXIT_FAIL


def cmd_ideals(args: argparse.Namespace) -> int:
    S = _load(args.file)
    ideals = enumerate_hyperideals(S)
    print(f"📐 {S.name}: {len(ideals)} hyperideals")
    for J in ideals:
        tags = [k for k, v in classify(S, J.bits).items() if v]
        print(f"  {format_mask(J.bits):<24} {' '.join(tags)}")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    S = _load(args.file)
    bits = as_mask(S, parse_list(args.ideal))
    print(f"📐 {S.name}: {format_mask(bits)}")
    for key, value in classify(S, bits).items():
        print(f"  {key:<14} {'yes' if value else 'no'}")
    return EXIT_OK


def cmd_radical(args: argparse.Namespace) -> int:
    S = _load(args.file)
    bits = as_mask(S, parse_list(args.ideal))
    print(f"📐 {S.name}: I={format_mask(bits)}")
    print(f"  powers  {format_mask(power_radical(S, bits).bits)}")
    print(f"  radical {format_mask(radical(S, bits).bits)}")
    return EXIT_OK


def cmd_localize(args: argparse.Namespace) -> int:
    S = _load(args.file)
    if args.at_prime is not None:
        prime = as_mask(S, parse_list(args.at_prime))
        if not is_hyperideal(S, prime) or prime == full_mask(S.card) or not is_prime(S, prime):
            raise HypothesisError("prime", f"{format_mask(prime)} is not a prime hyperideal of '{S.name}'")
        sbits = full_mask(S.card) & ~prime
    else:
        sbits = as_mask(S, parse_list(args.subset))
    L = build_localization(S, sbits)
    status = _emit_table(serialize_localization(L), args.out)
    print(f"🧮 {S.name} at {format_mask(sbits)}: {len(L.classes)} classes", file=status)
    _print_report(L.report, status)
    if CFG.log_sessions:
        session = get_suite_logger()
        session.log_validation(L.report)
        session.log_localization(L)
        session.finalize()
    return EXIT_OK if L.report.ok else EXIT_FAIL


def cmd_quotient(args: argparse.Namespace) -> int:
    S = _load(args.file)
    Q = build_quotient(S, as_mask(S, parse_list(args.ideal)))
    status = _emit_table(serialize_quotient(Q), args.out)
    print(f"🧮 {S.name} / {format_mask(Q.ideal)}: {len(Q.cosets)} cosets", file=status)
    _print_report(Q.report, status)
    return EXIT_OK if Q.report.ok else EXIT_FAIL


def cmd_iso(args: argparse.Namespace) -> int:
    A, B = _load(args.file_a), _load(args.file_b)
    iso = find_isomorphism(A, B)
    if iso is None:
        print(f"❌ {A.name} and {B.name} are not isomorphic")
        return EXIT_FAIL
    print(f"✅ {A.name} ≅ {B.name}")
    print("\n".join(f"  {line}" for line in iso.lines()))
    return EXIT_OK


def cmd_universal(args: argparse.Namespace) -> int:
    S, B = _load(args.file), _load(args.target)
    sbits = as_mask(S, parse_list(args.subset))
    k = MapTable(S.name, B.name, tuple(parse_pairs(args.map, S)))
    verdict = check_universal_property(S, sbits, B, k)
    mark = "✅" if verdict else "❌"
    print(f"{mark} universal property {S.name} at {format_mask(sbits)} -> {B.name}")
    if verdict.detail:
        print(f"  {verdict.detail}")
    if verdict.counterexample:
        print(f"  counterexample: {verdict.counterexample}")
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_suite(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus)
    if args.max_card is not None:
        logger.warning(f"suite card cap overridden: {corpus.max_card} -> {args.max_card}")
        corpus.max_card = args.max_card
    session = get_suite_logger() if CFG.log_sessions else None
    report = run_theorem_suite(corpus, label=Path(args.corpus).name, session=session)
    if args.json:
        print(f"💾 wrote {write_text(args.json, report.comparable_json())}")
    counts = report.body.counts
    print(f"📊 {report.body.corpus}: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    for r in report.body.records:
        if r.status in ("fail", "adjudicate"):
            print(f"  {r.status.upper()} {r.theorem} on {r.structure} {r.instance} | {r.detail}")
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="khr",
        description="Validate finite Krasner (m,n)-hyperrings, build fractions and quotients, check theorems.",
    )
    p.add_argument("--allow-weak", action="store_true",
                   help="Let downstream constructions run on weakly distributive structures")
    p.add_argument("--relation-form", choices=["negated", "display"], default=None,
                   help="Fraction equivalence form (default: from config)")
    p.add_argument("--primary-quantifier", choices=["universal", "existential"], default=None)
    p.add_argument("--card-cap", type=int, default=None,
                   help="Cardinality cap for single-structure commands")
    p.add_argument("--arity-cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=None, help="Suite worker processes")
    p.add_argument("--no-progress", action="store_true", help="Disable progress bars")
    p.add_argument("--log-session", action="store_true",
                   help="Write a session directory under the logs dir")
    p.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")

    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="Check every axiom")
    s.add_argument("file")
    s.add_argument("--weak", action="store_true", help="Also run weak distributivity when strict fails")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("ideals", help="Enumerate and classify hyperideals")
    s.add_argument("file")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("classify", help="Classify one hyperideal")
    s.add_argument("file")
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("radical", help="Radical and nilpotent powers of a hyperideal")
    s.add_argument("file")
    s.add_argument("--ideal", required=True)
    s.set_defaults(func=cmd_radical)

    s = sub.add_parser("localize", help="Build the hyperring of fractions")
    s.add_argument("file")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--subset")
    group.add_argument("--at-prime")
    s.add_argument("--out")
    s.set_defaults(func=cmd_localize)

    s = sub.add_parser("quotient", help="Build the quotient by a hyperideal")
    s.add_argument("file")
    s.add_argument("--ideal", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("iso", help="Search for an isomorphism")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("universal", help="Check the universal property for one homomorphism")
    s.add_argument("file")
    s.add_argument("--subset", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--map", required=True, help="Pairs x:y covering the source carrier")
    s.set_defaults(func=cmd_universal)

    s = sub.add_parser("suite", help="Run the theorem suite over a corpus file")
    s.add_argument("corpus")
    s.add_argument("--json", help="Write the comparable report body here")
    s.add_argument("--max-card", type=int, default=None)
    s.set_defaults(func=cmd_suite)
    return p


def apply_overrides(args: argparse.Namespace) -> None:
    """CLI flags override CFG in memory."""
    if args.allow_weak:
        CFG.allow_weak = True
    if args.relation_form:
        CFG.relation_form = args.relation_form
    if args.primary_quantifier:
        CFG.primary_quantifier = args.primary_quantifier
    if args.card_cap is not None:
        logger.warning(f"card cap overridden: {CFG.max_card} -> {args.card_cap}")
        CFG.max_card = args.card_cap
    if args.arity_cap is not None:
        logger.warning(f"arity cap overridden: {CFG.max_arity} -> {args.arity_cap}")
        CFG.max_arity = args.arity_cap
    if args.workers is not None:
        CFG.workers = max(1, args.workers)
    if args.no_progress:
        CFG.progress = False
    if args.log_session:
        CFG.log_sessions = True


def main(argv: Optional[Sequence[str]] = None) -> int:
    p = build_parser()
    args = p.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s | %(levelname)s | %(message)s",
    )
    apply_overrides(args)

    try:
        return args.func(args)
    except (UsageError, FormatError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except KrasnerError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        if CFG.log_sessions:
            get_suite_logger().log_error(args.command, str(e), e)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
