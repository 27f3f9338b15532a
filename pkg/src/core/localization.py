# core/localization.py
"""
Hyperring of fractions S^-1 R.

Pairs (r, s) in R x S are related when some t in S satisfies

    zero in g(t, f(g(r, s', 1..), -g(r', s, 1..), zero..), 1..)

("negated" form). The "display" form drops the minus sign and exists for
comparison only. Classes are connected components of the relation, built
after the relation has been checked to be an equivalence, and F / G are
evaluated on every representative tuple so that any dependence on the
choice of representatives is caught.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .bitset import format_mask, full_mask, members
from .config import BITMASK_LIMIT, CFG
from .domain import (
    AxiomVerdict, CheckReport, FractionClass, FractionPair, KrasnerStructure,
    LocalizedStructure, MapTable, Mask, TheoremVerdict, bits_of,
)
from .errors import (
    EquivalenceLawError, HypothesisError, InvariantViolation, UsageError,
    WellDefinednessError,
)
from .ideals import is_hyperintegral_domain, is_multiplicative
from .structure import as_mask, ensure_valid, g_padded, make_structure, validate_constructed

logger = logging.getLogger(__name__)


class UnionFind:
    def __init__(self, X: Iterable):
        self.parent = {x: x for x in X}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


@dataclass(frozen=True)
class Equivalence:
    """Outcome of a relation test; the witness t is kept even when it is zero."""
    holds: bool
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


def subset_token(bits: int) -> str:
    return "-".join(str(e) for e in members(bits)) or "none"


def _form(form: Optional[str]) -> str:
    form = form or CFG.relation_form
    if form not in ("negated", "display"):
        raise UsageError(f"unknown relation form '{form}'")
    return form


def fraction_equivalent(
    S: KrasnerStructure,
    Sset: Mask,
    p: Tuple[int, int],
    q: Tuple[int, int],
    form: Optional[str] = None,
) -> Equivalence:
    """(r, s) ~ (r', s'), returning the least witness t in Sset."""
    form = _form(form)
    sbits = as_mask(S, bits_of(Sset))
    (r, s), (r2, s2) = p, q
    for x in (r, r2):
        if not 0 <= x < S.card:
            raise UsageError(f"element {x} outside carrier of '{S.name}'")
    for x in (s, s2):
        if not 0 <= x < S.card or not (sbits >> x) & 1:
            raise UsageError(f"denominator {x} is not in {format_mask(sbits)}")
    a = g_padded(S, r, s2)
    b = g_padded(S, r2, s)
    if form == "negated":
        b = S.neg[b]
    inner = S.f_at((a, b) + (S.zero,) * (S.m - 2))
    spread = members(inner)
    for t in members(sbits):
        if any(g_padded(S, t, u) == S.zero for u in spread):
            return Equivalence(True, t)
    return Equivalence(False)


def fraction_pairs(S: KrasnerStructure, sbits: int) -> List[FractionPair]:
    return [FractionPair(r, s) for r in S.carrier for s in members(sbits)]


def relation_matrix(
    S: KrasnerStructure, Sset: Mask, form: Optional[str] = None,
) -> Tuple[List[FractionPair], np.ndarray]:
    form = _form(form)
    sbits = as_mask(S, bits_of(Sset))
    key = ("relation", sbits, form)
    if key not in S._cache:
        pairs = fraction_pairs(S, sbits)
        rel = np.array(
            [[fraction_equivalent(S, sbits, p, q, form).holds for q in pairs] for p in pairs],
            dtype=bool,
        ).reshape(len(pairs), len(pairs))
        S._cache[key] = (pairs, rel)
    return S._cache[key]


def check_equivalence_laws(S: KrasnerStructure, Sset: Mask, form: Optional[str] = None) -> CheckReport:
    """Reflexivity, symmetry and transitivity of ~ over R x S, with witnesses."""
    pairs, rel = relation_matrix(S, Sset, form)
    subject = f"{S.name}:S={format_mask(bits_of(Sset))}"
    report = CheckReport(subject=subject)

    bad = np.flatnonzero(~np.diag(rel)) if len(pairs) else np.array([], dtype=int)
    if len(bad):
        report.checks.append(AxiomVerdict("reflexive", False, tuple(pairs[bad[0]]),
                                          "pair not related to itself"))
    else:
        report.checks.append(AxiomVerdict("reflexive", True))

    asym = np.argwhere(rel & ~rel.T)
    if len(asym):
        i, j = (int(v) for v in asym[0])
        report.checks.append(AxiomVerdict("symmetric", False, pairs[i] + pairs[j],
                                          "p ~ q but not q ~ p"))
    else:
        report.checks.append(AxiomVerdict("symmetric", True))

    step = rel.astype(np.int64)
    through = (step @ step) > 0
    gaps = np.argwhere(through & ~rel)
    if len(gaps):
        i, k = (int(v) for v in gaps[0])
        j = int(np.flatnonzero(rel[i] & rel[:, k])[0])
        report.checks.append(AxiomVerdict("transitive", False, pairs[i] + pairs[j] + pairs[k],
                                          "p ~ q and q ~ u but not p ~ u"))
    else:
        report.checks.append(AxiomVerdict("transitive", True))
    return report


def compare_relation_forms(S: KrasnerStructure, Sset: Mask) -> List[Tuple[FractionPair, FractionPair]]:
    """Pairs on which the negated and display forms of ~ disagree."""
    pairs, negated = relation_matrix(S, Sset, "negated")
    _, display = relation_matrix(S, Sset, "display")
    return [(pairs[int(i)], pairs[int(j)]) for i, j in np.argwhere(negated != display)]


def _partition(pairs: List[FractionPair], rel: np.ndarray) -> List[Tuple[FractionPair, ...]]:
    uf = UnionFind(range(len(pairs)))
    for i, j in np.argwhere(rel):
        uf.union(int(i), int(j))
    groups: Dict[int, List[FractionPair]] = {}
    for i, p in enumerate(pairs):
        groups.setdefault(uf.find(i), []).append(p)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


def build_localization(
    S: KrasnerStructure,
    Sset: Mask,
    form: Optional[str] = None,
    allow_weak: Optional[bool] = None,
) -> LocalizedStructure:
    form = _form(form)
    ensure_valid(S, allow_weak)
    if not S.arity.localizable:
        raise UsageError(f"localization needs n >= m, '{S.name}' has m={S.m}, n={S.n}")
    sbits = as_mask(S, bits_of(Sset))
    if not is_multiplicative(S, sbits):
        raise UsageError(f"{format_mask(sbits)} is not a multiplicative subset of '{S.name}'")

    laws = check_equivalence_laws(S, sbits, form)
    for verdict in laws.checks:
        if not verdict.passed:
            raise EquivalenceLawError(verdict.axiom, verdict.counterexample)

    pairs, rel = relation_matrix(S, sbits, form)
    groups = _partition(pairs, rel)
    if len(groups) > BITMASK_LIMIT:
        raise UsageError(f"localization has {len(groups)} classes, above the bitmask limit")
    classes = tuple(FractionClass(id=i, members=g) for i, g in enumerate(groups))
    class_of = {p: c.id for c in classes for p in c.members}
    K, m, n = len(classes), S.m, S.n

    F = np.zeros((K,) * m, dtype=np.uint64)
    seen_f: Dict[Tuple[int, ...], Tuple[Tuple[FractionPair, ...], int]] = {}
    for reps in itertools.product(pairs, repeat=m):
        rs, ss = [p.r for p in reps], [p.s for p in reps]
        terms = tuple(
            g_padded(S, *(rs[i] if j == i else ss[j] for j in range(m)))
            for i in range(m)
        )
        den = g_padded(S, *ss)
        value = 0
        for u in members(S.f_at(terms)):
            value |= 1 << class_of[FractionPair(u, den)]
        key = tuple(class_of[p] for p in reps)
        if key in seen_f:
            first, first_value = seen_f[key]
            if first_value != value:
                raise WellDefinednessError("F", (first, first_value), (reps, value))
        else:
            seen_f[key] = (reps, value)
            F[key] = value

    G = np.zeros((K,) * n, dtype=np.int64)
    seen_g: Dict[Tuple[int, ...], Tuple[Tuple[FractionPair, ...], int]] = {}
    for reps in itertools.product(pairs, repeat=n):
        num = S.g_at(tuple(p.r for p in reps))
        den = S.g_at(tuple(p.s for p in reps))
        value = class_of[FractionPair(num, den)]
        key = tuple(class_of[p] for p in reps)
        if key in seen_g:
            first, first_value = seen_g[key]
            if first_value != value:
                raise WellDefinednessError("G", (first, first_value), (reps, value))
        else:
            seen_g[key] = (reps, value)
            G[key] = value

    zero_class = class_of[FractionPair(S.zero, S.one)]
    one_class = class_of[FractionPair(S.one, S.one)]
    name = f"{S.name}.S{subset_token(sbits)}"
    L = make_structure(name, m, n, K, F, G, zero_class, one_class, S.commutative)
    report = validate_constructed(L, allow_weak)
    logger.info(f"{S.name}: localized at {format_mask(sbits)} -> {K} classes")
    return LocalizedStructure(
        base=S, subset=sbits, classes=classes, class_of=class_of,
        structure=L, report=report, relation_form=form,
    )


def natural_map(L: LocalizedStructure) -> MapTable:
    S = L.base
    return MapTable(
        source=S.name,
        target=L.structure.name,
        image=tuple(L.fraction(r, S.one) for r in S.carrier),
    )


def is_invertible(S: KrasnerStructure, x: int) -> Optional[int]:
    if not 0 <= x < S.card:
        raise UsageError(f"element {x} outside carrier of '{S.name}'")
    inverses = [y for y in S.carrier if g_padded(S, x, y) == S.one]
    if not inverses:
        return None
    if len(inverses) > 1:
        raise InvariantViolation(f"{x} has several inverses {inverses} in '{S.name}'")
    return inverses[0]


def check_fraction_identities(L: LocalizedStructure) -> CheckReport:
    S, T = L.base, L.structure
    denominators = members(L.subset)
    report = CheckReport(subject=T.name)

    def verdict(name: str, failure: Optional[Tuple[int, ...]], detail: str) -> None:
        report.checks.append(AxiomVerdict(name, failure is None, failure,
                                          detail if failure is not None else ""))

    def first(items: Iterable[Tuple[int, ...]]) -> Optional[Tuple[int, ...]]:
        return next(iter(items), None)

    verdict("zero-over-s", first(
        (s,) for s in denominators if L.fraction(S.zero, s) != L.zero_class
    ), "zero/s is not the zero class")

    def killed(r: int) -> bool:
        return any(g_padded(S, t, r) == S.zero for t in denominators)

    verdict("zero-criterion", first(
        (r, s) for r in S.carrier for s in denominators
        if (L.fraction(r, s) == L.zero_class) != killed(r)
    ), "r/s is zero but no t in S kills r, or the converse")

    verdict("s-over-s", first(
        (s,) for s in denominators if L.fraction(s, s) != L.one_class
    ), "s/s is not the one class")

    def scaled(r: int, s2: int, s: int) -> bool:
        pad = (s,) * (S.m - 1)
        return L.fraction(g_padded(S, r, *pad), g_padded(S, s2, *pad)) == L.fraction(r, s2)

    verdict("scaling", first(
        (r, s2, s) for r in S.carrier for s2 in denominators for s in denominators
        if not scaled(r, s2, s)
    ), "g(r,s..)/g(s',s..) differs from r/s'")

    phi = natural_map(L)
    verdict("phi-s-invertible", first(
        (s,) for s in denominators if is_invertible(T, phi(s)) != L.fraction(S.one, s)
    ), "phi(s) has no inverse, or the inverse is not one/s")

    def decomposed(c: FractionClass) -> bool:
        r, s = c.canonical
        inv = is_invertible(T, phi(s))
        return inv is not None and g_padded(T, phi(r), inv) == c.id

    verdict("fraction-decomposition", first(
        (c.id,) for c in L.classes if not decomposed(c)
    ), "class differs from G(phi(r), phi(s)^-1, one..)")
    return report


def check_field_of_fractions(S: KrasnerStructure, allow_weak: Optional[bool] = None) -> CheckReport:
    """Localize a hyperintegral domain at R minus zero; expect a hyperfield."""
    report = CheckReport(subject=f"{S.name}:fractions")
    if S.card == 1:
        report.checks.append(AxiomVerdict("hyperintegral-domain", True, detail="vacuous"))
        report.checks.append(AxiomVerdict("nonzero-invertible", True, detail="vacuous"))
        return report
    if not is_hyperintegral_domain(S):
        raise UsageError(f"'{S.name}' is not a hyperintegral domain")
    nonzero = full_mask(S.card) & ~(1 << S.zero)
    if not is_multiplicative(S, nonzero):
        raise UsageError(f"nonzero elements of '{S.name}' are not multiplicative (zero divisors)")
    L = build_localization(S, nonzero, allow_weak=allow_weak)
    T = L.structure
    report.checks.append(AxiomVerdict(
        "hyperintegral-domain", is_hyperintegral_domain(T),
        detail=f"{T.card} classes",
    ))
    stuck = [c for c in T.carrier if c != T.zero and is_invertible(T, c) is None]
    report.checks.append(AxiomVerdict(
        "nonzero-invertible", not stuck,
        counterexample=(stuck[0],) if stuck else None,
        detail="non-invertible nonzero class" if stuck else "",
    ))
    return report


def check_domain_preserved(L: LocalizedStructure) -> TheoremVerdict:
    S = L.base
    instance = {"structure": S.name, "subset": members(L.subset)}
    if not is_hyperintegral_domain(S):
        raise HypothesisError("domain", f"'{S.name}' is not a hyperintegral domain")
    if (L.subset >> S.zero) & 1:
        raise HypothesisError("zero-free", "multiplicative subset contains zero")
    ok = is_hyperintegral_domain(L.structure)
    return TheoremVerdict("domain-preserved", instance, ok,
                          None if ok else {"localization": L.structure.name})
