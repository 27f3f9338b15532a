# core/structure.py
"""
Finite Krasner (m,n)-hyperrings as operation tables.

Evaluation helpers (eval_f, eval_g and their set/iterated forms) plus
validate_structure, which checks every defining axiom exhaustively and
reports the lexicographically first counterexample per failed axiom.
"""
from __future__ import annotations

import itertools
import logging
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .bitset import full_mask, least, mask_of, members
from .config import BITMASK_LIMIT, CFG
from .domain import ArityProfile, AxiomVerdict, KrasnerStructure, ValidationReport
from .errors import CapExceededError, FormatError, InvariantViolation, NotStrictError, UsageError

logger = logging.getLogger(__name__)

AXIOMS = (
    "f-associative",
    "f-reproducible",
    "scalar-neutral",
    "inverses",
    "g-associative",
    "distributive",
    "zero-absorbing",
    "scalar-identity",
    "commutative",
)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def derive_negation(f: np.ndarray, card: int, m: int, zero: int) -> Tuple[int, ...]:
    """neg[x] = the unique y with zero in f(x, y, zero^(m-2)); -1 if not unique."""
    flat = np.asarray(f)
    out: List[int] = []
    for x in range(card):
        ys = [y for y in range(card)
              if (int(flat[(x, y) + (zero,) * (m - 2)]) >> zero) & 1]
        out.append(ys[0] if len(ys) == 1 else -1)
    return tuple(out)


def make_structure(
    name: str,
    m: int,
    n: int,
    card: int,
    f: np.ndarray,
    g: np.ndarray,
    zero: int,
    one: int,
    commutative: bool = True,
    neg: Optional[Sequence[int]] = None,
) -> KrasnerStructure:
    """Wrap raw tables. Shapes and ranges are checked; axioms are not."""
    arity = ArityProfile(m, n)
    if card < 1 or card > BITMASK_LIMIT:
        raise FormatError(f"carrier size {card} outside 1..{BITMASK_LIMIT}")
    f = np.asarray(f, dtype=np.uint64)
    g = np.asarray(g, dtype=np.int64)
    if f.shape != (card,) * m:
        raise FormatError(f"f table has shape {f.shape}, expected {(card,) * m}")
    if g.shape != (card,) * n:
        raise FormatError(f"g table has shape {g.shape}, expected {(card,) * n}")
    if not (0 <= zero < card and 0 <= one < card):
        raise FormatError(f"zero={zero} / one={one} outside carrier 0..{card - 1}")
    full = np.uint64(full_mask(card))
    if np.any(f == 0):
        bad = tuple(int(v) for v in np.argwhere(f == 0)[0])
        raise FormatError(f"f{bad} is empty; f entries must be nonempty sets")
    if np.any(f & ~full):
        bad = tuple(int(v) for v in np.argwhere(f & ~full)[0])
        raise FormatError(f"f{bad} names elements outside the carrier")
    if np.any((g < 0) | (g >= card)):
        bad = tuple(int(v) for v in np.argwhere((g < 0) | (g >= card))[0])
        raise FormatError(f"g{bad} outside the carrier")
    if neg is None:
        neg = derive_negation(f, card, m, zero)
    elif len(neg) != card:
        raise FormatError(f"neg table has {len(neg)} entries, expected {card}")
    return KrasnerStructure(
        name=name, arity=arity, card=card, f=f, g=g,
        zero=zero, one=one, neg=tuple(int(v) for v in neg), commutative=commutative,
    )


def from_functions(
    name: str,
    m: int,
    n: int,
    card: int,
    fop: Callable[[Tuple[int, ...]], Iterable[int]],
    gop: Callable[[Tuple[int, ...]], int],
    zero: int,
    one: int,
    commutative: bool = True,
) -> KrasnerStructure:
    """Tabulate Python callables over the whole carrier."""
    f = np.zeros((card,) * m, dtype=np.uint64)
    g = np.zeros((card,) * n, dtype=np.int64)
    for t in itertools.product(range(card), repeat=m):
        f[t] = mask_of(fop(t))
    for t in itertools.product(range(card), repeat=n):
        g[t] = gop(t)
    return make_structure(name, m, n, card, f, g, zero, one, commutative)


def check_caps(S: KrasnerStructure, max_card: Optional[int] = None) -> None:
    max_card = CFG.max_card if max_card is None else max_card
    if S.card > max_card:
        raise CapExceededError(f"'{S.name}' has {S.card} elements, cap is {max_card}", S.card)
    arity = max(S.m, S.n)
    if arity > CFG.max_arity:
        raise CapExceededError(f"'{S.name}' has arity {arity}, cap is {CFG.max_arity}", arity)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _check_tuple(S: KrasnerStructure, t: Sequence[int], length: int, what: str) -> Tuple[int, ...]:
    t = tuple(int(x) for x in t)
    if len(t) != length:
        raise UsageError(f"{what} expects {length} arguments, got {len(t)}")
    for x in t:
        if not 0 <= x < S.card:
            raise UsageError(f"element {x} outside carrier 0..{S.card - 1} of '{S.name}'")
    return t


def _check_sets(S: KrasnerStructure, args: Sequence[int], length: int, what: str) -> List[int]:
    args = [int(a) for a in args]
    if len(args) != length:
        raise UsageError(f"{what} expects {length} arguments, got {len(args)}")
    full = full_mask(S.card)
    for a in args:
        if a == 0:
            raise UsageError(f"{what}: empty argument set")
        if a & ~full:
            raise UsageError(f"{what}: set names elements outside carrier of '{S.name}'")
    return args


def eval_f(S: KrasnerStructure, t: Sequence[int]) -> int:
    return S.f_at(_check_tuple(S, t, S.m, "f"))


def eval_g(S: KrasnerStructure, t: Sequence[int]) -> int:
    return S.g_at(_check_tuple(S, t, S.n, "g"))


def f_union(S: KrasnerStructure, masks: Sequence[int]) -> int:
    """Unchecked f over element sets: union over the Cartesian product."""
    out = 0
    for t in itertools.product(*(members(a) for a in masks)):
        out |= S.f_at(t)
    return out


def g_image(S: KrasnerStructure, masks: Sequence[int]) -> int:
    """Unchecked g applied elementwise over element sets."""
    out = 0
    for t in itertools.product(*(members(a) for a in masks)):
        out |= 1 << S.g_at(t)
    return out


def g_padded(S: KrasnerStructure, *xs: int) -> int:
    """g(x_1..x_k, one^(n-k)) for k <= n."""
    if len(xs) > S.n:
        raise UsageError(f"g takes at most {S.n} arguments, got {len(xs)}")
    return S.g_at(tuple(xs) + (S.one,) * (S.n - len(xs)))


def eval_f_subsets(S: KrasnerStructure, args: Sequence[int]) -> int:
    return f_union(S, _check_sets(S, args, S.m, "f over sets"))


def eval_g_iterated(S: KrasnerStructure, l: int, t: Sequence[int]) -> int:
    if l < 1:
        raise UsageError(f"iteration count must be positive, got {l}")
    t = _check_tuple(S, t, l * (S.n - 1) + 1, f"g_({l})")
    acc = S.g_at(t[: S.n])
    for k in range(1, l):
        lo = k * (S.n - 1) + 1
        acc = S.g_at((acc,) + t[lo: lo + S.n - 1])
    return acc


def eval_f_iterated(S: KrasnerStructure, l: int, sets: Sequence[int]) -> int:
    if l < 1:
        raise UsageError(f"iteration count must be positive, got {l}")
    sets = _check_sets(S, sets, l * (S.m - 1) + 1, f"f_({l})")
    acc = f_union(S, sets[: S.m])
    for k in range(1, l):
        lo = k * (S.m - 1) + 1
        acc = f_union(S, [acc] + sets[lo: lo + S.m - 1])
    return acc


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def index_grids(card: int, k: int) -> List[np.ndarray]:
    """k open index grids; grid i varies along axis i only."""
    return [
        np.arange(card).reshape([card if j == i else 1 for j in range(k)])
        for i in range(k)
    ]


def _first(bad: np.ndarray, shape: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(np.broadcast_to(bad, shape))
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _bit(masks: np.ndarray, e) -> np.ndarray:
    return ((masks >> np.asarray(e, dtype=np.uint64)) & np.uint64(1)).astype(bool)


def _f_with_set(S: KrasnerStructure, X: List[np.ndarray], p: int, inner: np.ndarray,
                shape: Tuple[int, ...]) -> np.ndarray:
    """f(X_0..X_{p-1}, inner, X_p..) with inner an array of element sets."""
    acc = np.zeros(shape, dtype=np.uint64)
    for e in range(S.card):
        val = S.f[tuple(X[:p]) + (e,) + tuple(X[p:])]
        acc |= np.where(_bit(inner, e), val, np.uint64(0))
    return acc


def _check_f_associative(S: KrasnerStructure) -> AxiomVerdict:
    m, k = S.m, 2 * S.m - 1
    shape = (S.card,) * k
    X = index_grids(S.card, k)

    def cut(p: int) -> np.ndarray:
        inner = S.f[tuple(X[p: p + m])]
        return _f_with_set(S, X[:p] + X[p + m:], p, inner, shape)

    base = cut(0)
    bad = np.zeros(shape, dtype=bool)
    for p in range(1, m):
        bad |= cut(p) != base
    first = _first(bad, shape)
    if first is None:
        return AxiomVerdict("f-associative", True)
    return AxiomVerdict("f-associative", False, first,
                        "nesting f at different cut positions gives different sets")


def _check_f_reproducible(S: KrasnerStructure) -> AxiomVerdict:
    full = np.uint64(full_mask(S.card))
    for i in range(S.m):
        reach = np.bitwise_or.reduce(S.f, axis=i)
        first = _first(reach != full, reach.shape)
        if first is not None:
            b = least(int(~int(reach[first]) & int(full)))
            return AxiomVerdict(
                "f-reproducible", False, (i,) + first + (b,),
                f"no x at position {i} puts element {b} into f",
            )
    return AxiomVerdict("f-reproducible", True)


def _check_scalar_neutral(S: KrasnerStructure) -> AxiomVerdict:
    def failure(e: int) -> Optional[Tuple[int, ...]]:
        for x in range(S.card):
            for i in range(S.m):
                t = (e,) * i + (x,) + (e,) * (S.m - i - 1)
                if S.f_at(t) != 1 << x:
                    return t
        return None

    own = failure(S.zero)
    if own is not None:
        return AxiomVerdict("scalar-neutral", False, own,
                            f"zero={S.zero} is not a scalar neutral of f")
    others = [e for e in range(S.card) if e != S.zero and failure(e) is None]
    if others:
        return AxiomVerdict("scalar-neutral", False, (others[0],),
                            "scalar neutral is not unique")
    return AxiomVerdict("scalar-neutral", True)


def _check_inverses(S: KrasnerStructure) -> AxiomVerdict:
    m, card, zero = S.m, S.card, S.zero
    for x in range(card):
        ys = [y for y in range(card) if (S.f_at((x, y) + (zero,) * (m - 2)) >> zero) & 1]
        if len(ys) != 1:
            return AxiomVerdict("inverses", False, (x,),
                                f"element {x} has {len(ys)} inverses {ys}")
        if S.neg[x] != ys[0]:
            return AxiomVerdict("inverses", False, (x,),
                                f"declared neg({x})={S.neg[x]} but inverse is {ys[0]}")
    if S.neg[zero] != zero:
        return AxiomVerdict("inverses", False, (zero,), "neg(zero) != zero")
    for x in range(card):
        if S.neg[S.neg[x]] != x:
            return AxiomVerdict("inverses", False, (x,), "neg is not an involution")

    # reversibility: x in f(x_1..x_m) => x_i in f(x, neg x_j for j != i)
    X = index_grids(card, m)
    shape = (card,) * m
    T = S.f[tuple(X)]
    NEG = np.asarray(S.neg, dtype=np.int64)
    best: Optional[Tuple[Tuple[int, ...], int, int]] = None
    for i in range(m):
        others = tuple(NEG[X[j]] for j in range(m) if j != i)
        xi = X[i].astype(np.uint64)
        for x in range(card):
            target = S.f[(x,) + others]
            viol = _bit(T, x) & ~(((target >> xi) & np.uint64(1)).astype(bool))
            first = _first(viol, shape)
            if first is not None and (best is None or (first, x, i) < best):
                best = (first, x, i)
    if best is not None:
        t, x, i = best
        return AxiomVerdict("inverses", False, t + (x, i),
                            f"{x} in f{t} but x_{i + 1} not recovered by reversal")
    return AxiomVerdict("inverses", True)


def _check_g_associative(S: KrasnerStructure) -> AxiomVerdict:
    n, k = S.n, 2 * S.n - 1
    shape = (S.card,) * k
    X = index_grids(S.card, k)

    def cut(p: int) -> np.ndarray:
        inner = S.g[tuple(X[p: p + n])]
        return np.broadcast_to(S.g[tuple(X[:p]) + (inner,) + tuple(X[p + n:])], shape)

    base = cut(0)
    bad = np.zeros(shape, dtype=bool)
    for p in range(1, n):
        bad |= cut(p) != base
    first = _first(bad, shape)
    if first is None:
        return AxiomVerdict("g-associative", True)
    return AxiomVerdict("g-associative", False, first,
                        "nesting g at different cut positions gives different elements")


def _check_distributive(S: KrasnerStructure, mode: str) -> AxiomVerdict:
    m, n, card = S.m, S.n, S.card
    k = (n - 1) + m
    shape = (card,) * k
    X = index_grids(card, k)
    A, Xs = X[: n - 1], X[n - 1:]
    inner = S.f[tuple(Xs)]
    for p in range(n):
        lhs = np.zeros(shape, dtype=np.uint64)
        for e in range(card):
            prod = S.g[tuple(A[:p]) + (e,) + tuple(A[p:])].astype(np.uint64)
            lhs |= np.where(_bit(inner, e), np.left_shift(np.uint64(1), prod), np.uint64(0))
        terms = tuple(S.g[tuple(A[:p]) + (xj,) + tuple(A[p:])] for xj in Xs)
        rhs = np.broadcast_to(S.f[terms], shape)
        bad = (lhs != rhs) if mode == "strict" else ((lhs & rhs) != rhs)
        first = _first(bad, shape)
        if first is not None:
            return AxiomVerdict(
                "distributive", False, (p,) + first,
                f"position {p}: g(a.., f(x..), ..) = {int(lhs[first])} vs "
                f"f(g(a.., x_j, ..)..) = {int(rhs[first])} (bitmasks, {mode})",
            )
    return AxiomVerdict("distributive", True, detail=mode)


def _check_zero_absorbing(S: KrasnerStructure) -> AxiomVerdict:
    for i in range(S.n):
        plane = np.take(S.g, S.zero, axis=i)
        first = _first(plane != S.zero, plane.shape)
        if first is not None:
            return AxiomVerdict("zero-absorbing", False, (i,) + first,
                                f"zero at position {i} is not absorbing")
    return AxiomVerdict("zero-absorbing", True)


def _check_scalar_identity(S: KrasnerStructure) -> AxiomVerdict:
    vals = S.g[(np.arange(S.card),) + (S.one,) * (S.n - 1)]
    first = _first(vals != np.arange(S.card), vals.shape)
    if first is not None:
        return AxiomVerdict("scalar-identity", False, first,
                            f"g(x, one^(n-1)) != x for x={first[0]}")
    return AxiomVerdict("scalar-identity", True)


def _check_commutative(S: KrasnerStructure) -> AxiomVerdict:
    if not S.commutative:
        return AxiomVerdict("commutative", True, detail="not declared")
    for label, table in (("f", S.f), ("g", S.g)):
        for i in range(table.ndim - 1):
            bad = table != np.swapaxes(table, i, i + 1)
            first = _first(bad, table.shape)
            if first is not None:
                return AxiomVerdict("commutative", False, first,
                                    f"{label} changes under swapping positions {i} and {i + 1}")
    return AxiomVerdict("commutative", True)


def validate_structure(
    S: KrasnerStructure,
    mode: str = "strict",
    max_card: Optional[int] = None,
) -> ValidationReport:
    """
    Exhaustively check every hyperring axiom on S.

    mode="strict" demands set equality in distributivity, mode="weak" only
    g(a.., f(x..), ..) ⊇ f(g(a.., x_j, ..)..).
    """
    if mode not in ("strict", "weak"):
        raise UsageError(f"unknown distributivity mode '{mode}'")
    check_caps(S, max_card)
    report = ValidationReport(subject=S.name, mode=mode)
    report.checks = [
        _check_f_associative(S),
        _check_f_reproducible(S),
        _check_scalar_neutral(S),
        _check_inverses(S),
        _check_g_associative(S),
        _check_distributive(S, mode),
        _check_zero_absorbing(S),
        _check_scalar_identity(S),
        _check_commutative(S),
    ]
    if report.ok:
        logger.info(f"{S.name}: all {len(report.checks)} axioms pass ({mode})")
    else:
        logger.info(f"{S.name}: failed {', '.join(report.failed)} ({mode})")
    return report


def ensure_valid(
    S: KrasnerStructure,
    allow_weak: Optional[bool] = None,
    max_card: Optional[int] = None,
) -> ValidationReport:
    """Validate once per structure; refuse weak-only structures unless allowed."""
    allow_weak = CFG.allow_weak if allow_weak is None else allow_weak
    strict = S._cache.get("strict")
    if strict is None:
        strict = S._cache["strict"] = validate_structure(S, "strict", max_card)
    if strict.ok:
        return strict
    if allow_weak:
        weak = S._cache.get("weak")
        if weak is None:
            weak = S._cache["weak"] = validate_structure(S, "weak", max_card)
        if weak.ok:
            logger.warning(f"{S.name}: only weakly distributive, continuing (allow_weak)")
            return weak
    raise NotStrictError(S.name, strict.failed)


def validate_constructed(T: KrasnerStructure, allow_weak: Optional[bool] = None) -> ValidationReport:
    """Check a localization or quotient; weak-only results need allow_weak."""
    allow_weak = CFG.allow_weak if allow_weak is None else allow_weak
    strict = T._cache["strict"] = validate_structure(T, "strict", max_card=BITMASK_LIMIT)
    if strict.ok:
        return strict
    if allow_weak:
        weak = T._cache["weak"] = validate_structure(T, "weak", max_card=BITMASK_LIMIT)
        if weak.ok:
            logger.warning(f"{T.name}: constructed structure is only weakly distributive")
            return weak
    raise InvariantViolation(
        f"constructed structure '{T.name}' fails strict validation: {', '.join(strict.failed)}"
    )


ElementSet = Union[int, Iterable[int]]


def as_mask(S: KrasnerStructure, elements: ElementSet) -> int:
    mask = elements if isinstance(elements, int) else mask_of(elements)
    if mask & ~full_mask(S.card):
        raise UsageError(f"set names elements outside carrier of '{S.name}'")
    return mask
