# core/domain.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from .bitset import members
from .errors import UsageError

# uint64 bitmask per m-tuple of element indices
HyperAddTable = np.ndarray
# int64 element per n-tuple
MulTable = np.ndarray


@dataclass(frozen=True)
class ArityProfile:
    m: int  # hyperaddition arity
    n: int  # multiplication arity

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise UsageError(f"arities must be >= 2, got m={self.m}, n={self.n}")

    @property
    def localizable(self) -> bool:
        # F's denominator g(s_1..s_m, 1^(n-m)) needs n >= m
        return self.n >= self.m


def _flat_index(card: int, t: Tuple[int, ...]) -> int:
    idx = 0
    for x in t:
        idx = idx * card + x
    return idx


@dataclass(eq=False)
class KrasnerStructure:
    """
    Finite (m,n)-structure stored as operation tables.

    f: uint64 array of shape (card,)*m holding element-set bitmasks.
    g: int64 array of shape (card,)*n holding single elements.
    neg[x] is the additive inverse, -1 where none is unique.
    """
    name: str
    arity: ArityProfile
    card: int
    f: HyperAddTable
    g: MulTable
    zero: int
    one: int
    neg: Tuple[int, ...]
    commutative: bool = True

    _f_flat: List[int] = field(init=False, repr=False)
    _g_flat: List[int] = field(init=False, repr=False)
    _cache: Dict[str, Any] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self._f_flat = [int(v) for v in np.asarray(self.f).ravel().tolist()]
        self._g_flat = [int(v) for v in np.asarray(self.g).ravel().tolist()]

    @property
    def m(self) -> int:
        return self.arity.m

    @property
    def n(self) -> int:
        return self.arity.n

    @property
    def carrier(self) -> range:
        return range(self.card)

    def f_at(self, t: Tuple[int, ...]) -> int:
        """Unchecked table lookup; callers validate indices."""
        return self._f_flat[_flat_index(self.card, t)]

    def g_at(self, t: Tuple[int, ...]) -> int:
        return self._g_flat[_flat_index(self.card, t)]

    def same_tables(self, other: "KrasnerStructure") -> bool:
        return (
            self.arity == other.arity
            and self.card == other.card
            and self.zero == other.zero
            and self.one == other.one
            and self.commutative == other.commutative
            and self._f_flat == other._f_flat
            and self._g_flat == other._g_flat
        )


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    counterexample: Optional[Tuple[int, ...]] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "detail": self.detail,
        }


@dataclass
class CheckReport:
    """Ordered list of named pass/fail checks with first counterexamples."""
    subject: str
    checks: List[AxiomVerdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> Tuple[str, ...]:
        return tuple(c.axiom for c in self.checks if not c.passed)

    def get(self, axiom: str) -> AxiomVerdict:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def to_dict(self) -> Dict[str, Any]:
        return {"subject": self.subject, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


@dataclass
class ValidationReport(CheckReport):
    mode: str = "strict"

    def to_dict(self) -> Dict[str, Any]:
        d = super().to_dict()
        d["mode"] = self.mode
        return d


ROLES = ("plain", "hyperideal", "multiplicative", "prime", "primary",
         "two-absorbing", "maximal", "radical")


@dataclass(frozen=True)
class SubsetMask:
    owner: str
    bits: int
    role: str = "plain"

    def members(self) -> List[int]:
        return members(self.bits)

    def __contains__(self, e: int) -> bool:
        return bool((self.bits >> e) & 1)


Mask = Union[int, SubsetMask]


def bits_of(a: Mask) -> int:
    return a.bits if isinstance(a, SubsetMask) else int(a)


class FractionPair(NamedTuple):
    r: int
    s: int


@dataclass(frozen=True)
class FractionClass:
    id: int
    members: Tuple[FractionPair, ...]

    @property
    def canonical(self) -> FractionPair:
        return self.members[0]


@dataclass(eq=False)
class LocalizedStructure:
    base: KrasnerStructure
    subset: int
    classes: Tuple[FractionClass, ...]
    class_of: Dict[FractionPair, int]
    structure: KrasnerStructure
    report: ValidationReport
    relation_form: str = "negated"

    @property
    def zero_class(self) -> int:
        return self.structure.zero

    @property
    def one_class(self) -> int:
        return self.structure.one

    def fraction(self, r: int, s: int) -> int:
        return self.class_of[FractionPair(r, s)]


@dataclass(frozen=True)
class CosetClass:
    id: int
    representative: int
    members: int


@dataclass(eq=False)
class QuotientStructure:
    base: KrasnerStructure
    ideal: int
    cosets: Tuple[CosetClass, ...]
    coset_of: Tuple[int, ...]
    structure: KrasnerStructure
    report: ValidationReport


@dataclass(frozen=True)
class MapTable:
    source: str
    target: str
    image: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def lines(self) -> List[str]:
        return [f"map {i} -> {j}" for i, j in enumerate(self.image)]


@dataclass
class TheoremVerdict:
    theorem: str
    instance: Dict[str, Any]
    passed: bool
    counterexample: Optional[Dict[str, Any]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed
