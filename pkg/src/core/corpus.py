# core/corpus.py
"""
Built-in structure generators and corpus files.

A corpus file lists one structure per line:

    ring Z <k> [m <m>] [n <n>]
    ring ZxZ <k1> <k2>
    hyperfield krasner|sign [m <m>] [n <n>]
    trivial [m <m>] [n <n>]
    file <path> [expect: adjudicate]
    cap max-card|max-m|max-n <int>
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .bitset import mask_of, members
from .config import BITMASK_LIMIT, CFG
from .domain import KrasnerStructure
from .errors import FormatError, NotStrictError, UsageError
from .io import load_structure
from .structure import ensure_valid, from_functions, make_structure

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def _suffix(m: int, n: int) -> str:
    return "" if (m, n) == (2, 2) else f"_{m}{n}"


def generate_ring_embedding(k: int, m: int = 2, n: int = 2) -> KrasnerStructure:
    """Z_k with f = {sum mod k} and g = product mod k."""
    if not 2 <= k <= BITMASK_LIMIT:
        raise UsageError(f"modulus must be in 2..{BITMASK_LIMIT}, got {k}")
    if math.gcd(k, m - 1) > 1:
        # (m-1)e = 0 mod k then has a nonzero solution e
        raise UsageError(f"Z{k} with m={m} has no unique scalar neutral: gcd({k}, {m - 1}) > 1")
    return from_functions(
        f"Z{k}{_suffix(m, n)}", m, n, k,
        fop=lambda t: [sum(t) % k],
        gop=lambda t: math.prod(t) % k,
        zero=0, one=1,
    )


def generate_product_ring(k1: int, k2: int) -> KrasnerStructure:
    """Z_k1 x Z_k2 with (a, b) stored as a * k2 + b."""
    if k1 < 2 or k2 < 2 or k1 * k2 > BITMASK_LIMIT:
        raise UsageError(f"product Z{k1} x Z{k2} outside supported sizes")

    def split(x: int) -> Tuple[int, int]:
        return divmod(x, k2)

    def join(a: int, b: int) -> int:
        return (a % k1) * k2 + (b % k2)

    def add(t):
        a, b = split(t[0])
        c, d = split(t[1])
        return [join(a + c, b + d)]

    def mul(t):
        a, b = split(t[0])
        c, d = split(t[1])
        return join(a * c, b * d)

    return from_functions(f"Z{k1}xZ{k2}", 2, 2, k1 * k2, add, mul, zero=0, one=join(1, 1))


def _fold_hyper(binary: Dict[Tuple[int, int], Set[int]], t: Sequence[int]) -> Set[int]:
    acc = {t[0]}
    for x in t[1:]:
        acc = set().union(*(binary[(a, x)] for a in acc))
    return acc


def _hyperfield(name: str, m: int, n: int, card: int,
                binary: Dict[Tuple[int, int], Set[int]], times) -> KrasnerStructure:
    return from_functions(
        f"{name}{_suffix(m, n)}", m, n, card,
        fop=lambda t: _fold_hyper(binary, t),
        gop=lambda t: reduce(times, t),
        zero=0, one=1,
    )


def generate_krasner_hyperfield(m: int = 2, n: int = 2) -> KrasnerStructure:
    """{0, 1} with 1 + 1 = {0, 1}."""
    binary = {(0, 0): {0}, (0, 1): {1}, (1, 0): {1}, (1, 1): {0, 1}}
    return _hyperfield("K", m, n, 2, binary, lambda a, b: a * b)


def generate_sign_hyperfield(m: int = 2, n: int = 2) -> KrasnerStructure:
    """{0, 1, -1} with -1 stored as 2 and 1 + (-1) = everything."""
    binary = {(0, x): {x} for x in range(3)}
    binary.update({(x, 0): {x} for x in range(3)})
    binary.update({(1, 1): {1}, (2, 2): {2}, (1, 2): {0, 1, 2}, (2, 1): {0, 1, 2}})
    sign = {0: 0, 1: 1, 2: -1}
    back = {0: 0, 1: 1, -1: 2}
    return _hyperfield("Sign", m, n, 3, binary, lambda a, b: back[sign[a] * sign[b]])


def generate_trivial(m: int = 2, n: int = 2) -> KrasnerStructure:
    return from_functions(f"T{_suffix(m, n)}", m, n, 1,
                          fop=lambda t: [0], gop=lambda t: 0, zero=0, one=0)


def relabel(S: KrasnerStructure, perm: Sequence[int], name: Optional[str] = None) -> KrasnerStructure:
    """Isomorphic copy in which element x is renamed perm[x]."""
    perm = list(perm)
    if sorted(perm) != list(S.carrier):
        raise UsageError(f"{perm} is not a permutation of the carrier of '{S.name}'")
    f = np.zeros_like(S.f)
    g = np.zeros_like(S.g)
    for t in itertools.product(S.carrier, repeat=S.m):
        f[tuple(perm[x] for x in t)] = mask_of(perm[e] for e in members(S.f_at(t)))
    for t in itertools.product(S.carrier, repeat=S.n):
        g[tuple(perm[x] for x in t)] = perm[S.g_at(t)]
    return make_structure(name or f"{S.name}~", S.m, S.n, S.card, f, g,
                          perm[S.zero], perm[S.one], S.commutative)


# ---------------------------------------------------------------------------
# Corpus files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Directive:
    kind: str
    args: Tuple[Union[int, str], ...]
    line: int
    expect_adjudicate: bool = False


@dataclass
class CorpusSpec:
    directives: List[Directive] = field(default_factory=list)
    base_dir: Path = Path(".")
    max_card: int = field(default_factory=lambda: CFG.suite_max_card)
    max_m: int = field(default_factory=lambda: CFG.max_arity)
    max_n: int = field(default_factory=lambda: CFG.max_arity)


@dataclass(eq=False)
class CorpusEntry:
    structure: KrasnerStructure
    source: str
    expect_adjudicate: bool = False
    within_caps: bool = True


def _options(tokens: List[str], line: int, allowed: Iterable[str]) -> Dict[str, int]:
    allowed = set(allowed)
    if len(tokens) % 2:
        raise FormatError(f"expected 'key value' options, got {' '.join(tokens)}", line)
    out: Dict[str, int] = {}
    for key, value in zip(tokens[::2], tokens[1::2]):
        if key not in allowed:
            raise FormatError(f"unknown option '{key}'", line)
        try:
            out[key] = int(value)
        except ValueError:
            raise FormatError(f"option '{key}' needs an integer", line) from None
    return out


def _ints(tokens: List[str], line: int) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)}", line) from None


def parse_corpus(text: str, base_dir: Union[str, Path] = ".") -> CorpusSpec:
    spec = CorpusSpec(base_dir=Path(base_dir))
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        head = tokens[0]
        if head == "ring" and len(tokens) >= 3 and tokens[1] == "Z":
            (k,) = _ints(tokens[2:3], lineno)
            opts = _options(tokens[3:], lineno, ("m", "n"))
            spec.directives.append(Directive("ring", (k, opts.get("m", 2), opts.get("n", 2)), lineno))
        elif head == "ring" and len(tokens) == 4 and tokens[1] == "ZxZ":
            spec.directives.append(Directive("product", _ints(tokens[2:4], lineno), lineno))
        elif head == "hyperfield" and len(tokens) >= 2 and tokens[1] in ("krasner", "sign"):
            opts = _options(tokens[2:], lineno, ("m", "n"))
            spec.directives.append(
                Directive(tokens[1], (opts.get("m", 2), opts.get("n", 2)), lineno)
            )
        elif head == "trivial":
            opts = _options(tokens[1:], lineno, ("m", "n"))
            spec.directives.append(Directive("trivial", (opts.get("m", 2), opts.get("n", 2)), lineno))
        elif head == "file" and len(tokens) >= 2:
            tail = " ".join(tokens[2:])
            if tail not in ("", "expect: adjudicate"):
                raise FormatError(f"unknown file annotation '{tail}'", lineno)
            spec.directives.append(Directive("file", (tokens[1],), lineno, bool(tail)))
        elif head == "cap" and len(tokens) == 3:
            (value,) = _ints(tokens[2:3], lineno)
            key = {"max-card": "max_card", "max-m": "max_m", "max-n": "max_n"}.get(tokens[1])
            if key is None:
                raise FormatError(f"unknown cap '{tokens[1]}'", lineno)
            setattr(spec, key, value)
        else:
            raise FormatError(f"unknown corpus directive '{body}'", lineno)
    return spec


def load_corpus(path: Union[str, Path]) -> CorpusSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    return parse_corpus(text, path.parent)


def _materialize(d: Directive, base_dir: Path) -> Tuple[KrasnerStructure, str]:
    if d.kind == "ring":
        k, m, n = d.args
        return generate_ring_embedding(k, m, n), f"ring Z {k} m {m} n {n}"
    if d.kind == "product":
        k1, k2 = d.args
        return generate_product_ring(k1, k2), f"ring ZxZ {k1} {k2}"
    if d.kind == "krasner":
        return generate_krasner_hyperfield(*d.args), "hyperfield krasner"
    if d.kind == "sign":
        return generate_sign_hyperfield(*d.args), "hyperfield sign"
    if d.kind == "trivial":
        return generate_trivial(*d.args), "trivial"
    path = Path(d.args[0])
    if not path.is_absolute():
        path = base_dir / path
    return load_structure(path), f"file {d.args[0]}"


def _require_valid(S: KrasnerStructure, line: int) -> None:
    try:
        ensure_valid(S, max_card=S.card)
    except NotStrictError as e:
        raise FormatError(f"{e}, or tag it 'expect: adjudicate'", line) from e


def build_corpus(spec: CorpusSpec) -> List[CorpusEntry]:
    """
    Materialize every directive. Structures within the caps must validate strict
    (or weak under allow_weak) unless tagged adjudicate; structures over the caps
    are flagged, not dropped, and left unvalidated.
    """
    entries: List[CorpusEntry] = []
    for d in spec.directives:
        try:
            S, source = _materialize(d, spec.base_dir)
        except UsageError as e:
            raise FormatError(str(e), d.line) from e
        within = S.card <= spec.max_card and S.m <= spec.max_m and S.n <= spec.max_n
        if not within:
            logger.warning(f"{S.name}: outside corpus caps, theorem checks will be skipped")
        elif not d.expect_adjudicate:
            _require_valid(S, d.line)
        entries.append(CorpusEntry(S, source, d.expect_adjudicate, within))
    return entries
