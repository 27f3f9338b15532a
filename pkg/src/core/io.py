# core/io.py
"""
Text format for finite structures.

    khr 1
    name <token>
    m <int>  n <int>  card <int>
    zero <idx>  one <idx>
    flags commutative
    f <i1> ... <im> : <j1> [<j2> ...]
    g <i1> ... <in> : <j>
    neg <i> : <j>                      # optional, derived when absent
    class <id> : <r>/<s> ...           # sidecar of a localization
    coset <id> : <e> ...               # sidecar of a quotient

'#' starts a comment. '*' matches any element in an f/g argument position;
specific entries (after commutative closure) win over wildcards.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .bitset import mask_of, members
from .config import BITMASK_LIMIT
from .domain import KrasnerStructure, LocalizedStructure, QuotientStructure
from .errors import FormatError
from .structure import make_structure

logger = logging.getLogger(__name__)

MAGIC = "khr"
VERSION = "1"
WILDCARD = -1

Pattern = Tuple[int, ...]


@dataclass
class StructureFile:
    name: str = ""
    m: int = 0
    n: int = 0
    card: int = 0
    zero: int = -1
    one: int = -1
    flags: Tuple[str, ...] = ()
    f_entries: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    g_entries: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    neg_entries: Dict[int, int] = field(default_factory=dict)
    classes: Dict[int, List[Tuple[int, int]]] = field(default_factory=dict)
    cosets: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def commutative(self) -> bool:
        return "commutative" in self.flags


class _Table:
    """Entries of one operation table as read, before expansion."""

    def __init__(self, label: str, arity: int):
        self.label = label
        self.arity = arity
        self.specific: Dict[Tuple[int, ...], Tuple[int, int]] = {}
        self.wildcards: List[Tuple[Pattern, int, int]] = []

    def add(self, args: Pattern, value: int, line: int) -> None:
        if WILDCARD in args:
            self.wildcards.append((args, value, line))
            return
        old = self.specific.get(args)
        if old is not None and old[0] != value:
            raise FormatError(f"{self.label}{args} conflicts with line {old[1]}", line)
        self.specific.setdefault(args, (value, line))

    def expand(self, card: int, commutative: bool) -> Dict[Tuple[int, ...], int]:
        table: Dict[Tuple[int, ...], Tuple[int, int]] = dict(self.specific)
        if commutative:
            for args, (value, line) in sorted(self.specific.items()):
                for perm in set(itertools.permutations(args)):
                    old = table.get(perm)
                    if old is not None and old[0] != value:
                        raise FormatError(
                            f"{self.label}{perm} conflicts with line {old[1]} under commutativity", line
                        )
                    table.setdefault(perm, (value, line))

        def matches(pattern: Pattern, t: Tuple[int, ...]) -> bool:
            return all(p == WILDCARD or p == x for p, x in zip(pattern, t))

        out: Dict[Tuple[int, ...], int] = {}
        for t in itertools.product(range(card), repeat=self.arity):
            if t in table:
                out[t] = table[t][0]
                continue
            shapes = set(itertools.permutations(t)) if commutative else {t}
            hit: Optional[Tuple[int, int]] = None
            for pattern, value, line in self.wildcards:
                if any(matches(pattern, s) for s in shapes):
                    if hit is not None and hit[0] != value:
                        raise FormatError(
                            f"wildcards on lines {hit[1]} and {line} disagree at {self.label}{t}", line
                        )
                    hit = hit or (value, line)
            if hit is None:
                raise FormatError(f"no entry for {self.label}{t}")
            out[t] = hit[0]
        return out


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what}: expected an integer, got '{token}'", line) from None


def _element(token: str, sf: StructureFile, line: int, wildcard: bool = False) -> int:
    if wildcard and token == "*":
        return WILDCARD
    x = _int(token, line, "element")
    if not 0 <= x < sf.card:
        raise FormatError(f"element {x} outside carrier 0..{sf.card - 1}", line)
    return x


def _base(token: str, line: int) -> int:
    """Element of the base structure named in a sidecar; its carrier is not in this file."""
    x = _int(token, line, "base element")
    if not 0 <= x < BITMASK_LIMIT:
        raise FormatError(f"base element {x} out of range", line)
    return x


def _split_entry(rest: str, line: int) -> Tuple[List[str], List[str]]:
    if ":" not in rest:
        raise FormatError("entry needs 'args : values'", line)
    left, right = rest.split(":", 1)
    return left.split(), right.split()


def parse_structure(text: str) -> StructureFile:
    sf = StructureFile()
    f_table: Optional[_Table] = None
    g_table: Optional[_Table] = None
    seen_magic = False
    given = set()

    def set_header(key: str, value: int, line: int) -> None:
        if key in given and getattr(sf, key) != value:
            raise FormatError(f"header '{key}' given twice", line)
        given.add(key)
        setattr(sf, key, value)

    def tables() -> Tuple[_Table, _Table]:
        nonlocal f_table, g_table
        if f_table is None:
            if not (sf.m and sf.n and sf.card):
                raise FormatError("table entry before 'm n card' header", lineno)
            f_table, g_table = _Table("f", sf.m), _Table("g", sf.n)
        return f_table, g_table

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        head, rest = tokens[0], body[len(tokens[0]):]

        if not seen_magic:
            if head != MAGIC:
                raise FormatError(f"bad magic '{head}', expected '{MAGIC}'", lineno)
            if len(tokens) != 2 or tokens[1] != VERSION:
                raise FormatError(f"unsupported version '{' '.join(tokens[1:])}'", lineno)
            seen_magic = True
            continue

        if head == "name":
            if len(tokens) != 2:
                raise FormatError("name must be a single token", lineno)
            sf.name = tokens[1]
        elif head in ("m", "n", "card", "zero", "one"):
            if len(tokens) % 2:
                raise FormatError("header expects 'key value' pairs", lineno)
            for key, value in zip(tokens[::2], tokens[1::2]):
                if key not in ("m", "n", "card", "zero", "one"):
                    raise FormatError(f"unknown header key '{key}'", lineno)
                if f_table is not None and key in ("m", "n", "card"):
                    raise FormatError(f"header '{key}' after table entries", lineno)
                set_header(key, _int(value, lineno, key), lineno)
        elif head == "flags":
            for flag in tokens[1:]:
                if flag != "commutative":
                    raise FormatError(f"unknown flag '{flag}'", lineno)
            sf.flags = tuple(sorted(set(sf.flags) | set(tokens[1:])))
        elif head in ("f", "g"):
            ft, gt = tables()
            table = ft if head == "f" else gt
            left, right = _split_entry(rest, lineno)
            if len(left) != table.arity:
                raise FormatError(
                    f"{head} takes {table.arity} arguments, line has {len(left)}", lineno
                )
            args = tuple(_element(tok, sf, lineno, wildcard=True) for tok in left)
            values = [_element(tok, sf, lineno) for tok in right]
            if not values:
                raise FormatError(f"{head} entry without a value", lineno)
            if head == "g" and len(values) != 1:
                raise FormatError("g is single-valued", lineno)
            table.add(args, mask_of(values) if head == "f" else values[0], lineno)
        elif head == "neg":
            left, right = _split_entry(rest, lineno)
            if len(left) != 1 or len(right) != 1:
                raise FormatError("neg entry is 'neg <i> : <j>'", lineno)
            x, y = _element(left[0], sf, lineno), _element(right[0], sf, lineno)
            if sf.neg_entries.get(x, y) != y:
                raise FormatError(f"neg({x}) given twice", lineno)
            sf.neg_entries[x] = y
        elif head == "class":
            left, right = _split_entry(rest, lineno)
            cid = _int(left[0] if left else "", lineno, "class id")
            pairs = []
            for tok in right:
                r, _, s = tok.partition("/")
                pairs.append((_base(r, lineno), _base(s, lineno)))
            sf.classes[cid] = pairs
        elif head == "coset":
            left, right = _split_entry(rest, lineno)
            cid = _int(left[0] if left else "", lineno, "coset id")
            sf.cosets[cid] = [_base(tok, lineno) for tok in right]
        else:
            raise FormatError(f"unknown directive '{head}'", lineno)

    if not seen_magic:
        raise FormatError("empty file, expected 'khr 1' header")
    for key in ("m", "n", "card"):
        if not getattr(sf, key):
            raise FormatError(f"missing header '{key}'")
    for key in ("zero", "one"):
        if getattr(sf, key) < 0:
            raise FormatError(f"missing header '{key}'")
    if sf.m < 2 or sf.n < 2:
        raise FormatError(f"arities must be >= 2, got m={sf.m}, n={sf.n}")
    if sf.card > BITMASK_LIMIT:
        raise FormatError(f"card {sf.card} above the {BITMASK_LIMIT}-element limit")
    if not 0 <= sf.zero < sf.card or not 0 <= sf.one < sf.card:
        raise FormatError("zero/one outside the carrier")
    ft, gt = tables() if f_table is None else (f_table, g_table)
    sf.f_entries = ft.expand(sf.card, sf.commutative)
    sf.g_entries = gt.expand(sf.card, sf.commutative)
    if sf.neg_entries and len(sf.neg_entries) != sf.card:
        raise FormatError(f"neg table covers {len(sf.neg_entries)} of {sf.card} elements")
    return sf


def to_structure(sf: StructureFile) -> KrasnerStructure:
    f = np.zeros((sf.card,) * sf.m, dtype=np.uint64)
    g = np.zeros((sf.card,) * sf.n, dtype=np.int64)
    for t, mask in sf.f_entries.items():
        f[t] = mask
    for t, value in sf.g_entries.items():
        g[t] = value
    neg = [sf.neg_entries[x] for x in range(sf.card)] if sf.neg_entries else None
    return make_structure(sf.name or "unnamed", sf.m, sf.n, sf.card, f, g,
                          sf.zero, sf.one, sf.commutative, neg)


def read_structure_file(path: Union[str, Path]) -> StructureFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    sf = parse_structure(text)
    if not sf.name:
        sf.name = path.stem
    logger.debug(f"parsed {path} as '{sf.name}' ({sf.m},{sf.n}) card={sf.card}")
    return sf


def load_structure(path: Union[str, Path]) -> KrasnerStructure:
    return to_structure(read_structure_file(path))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _table_lines(S: KrasnerStructure) -> List[str]:
    lines = [
        f"{MAGIC} {VERSION}",
        f"name {S.name}",
        f"m {S.m}  n {S.n}  card {S.card}",
        f"zero {S.zero}  one {S.one}",
    ]
    if S.commutative:
        lines.append("flags commutative")
    for t in itertools.product(S.carrier, repeat=S.m):
        lines.append(f"f {' '.join(map(str, t))} : {' '.join(map(str, members(S.f_at(t))))}")
    for t in itertools.product(S.carrier, repeat=S.n):
        lines.append(f"g {' '.join(map(str, t))} : {S.g_at(t)}")
    return lines


def serialize_structure(S: KrasnerStructure) -> str:
    """Explicit entries in lexicographic order; byte-stable for equal tables."""
    return "\n".join(_table_lines(S)) + "\n"


def serialize_localization(L: LocalizedStructure) -> str:
    lines = _table_lines(L.structure)
    lines.append(f"# classes of {L.base.name} at S={{{','.join(map(str, members(L.subset)))}}}")
    for c in L.classes:
        lines.append(f"class {c.id} : {' '.join(f'{p.r}/{p.s}' for p in c.members)}")
    return "\n".join(lines) + "\n"


def serialize_quotient(Q: QuotientStructure) -> str:
    lines = _table_lines(Q.structure)
    lines.append(f"# cosets of {Q.base.name} by I={{{','.join(map(str, members(Q.ideal)))}}}")
    for c in Q.cosets:
        lines.append(f"coset {c.id} : {' '.join(map(str, members(c.members)))}")
    return "\n".join(lines) + "\n"


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
