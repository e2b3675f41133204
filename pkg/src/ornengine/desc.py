"""Descriptions of indexed functors, their interpretation, fixpoints and folds.

A description ``DescFam(I, J)`` assigns to every output index ``j`` a
code built from ``Var``, ``One``, ``Sigma`` and ``Pi``.  Interpreted at a
family ``X`` over ``I`` it yields a family over ``J``:

* ``Var i``      -> the elements of ``X i``
* ``One``        -> ``unit``
* ``Sigma S T``  -> ``(pair s t)`` with ``t`` in the interpretation of ``T s``
* ``Pi S T``     -> an ordered tuple with one entry per element of ``S``
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import CarrierOverflow, DomainError, IndexMismatch, ValidationError
from .finset import (
    UNIT,
    Con,
    Family,
    FinFn,
    FinSetExpr,
    InvImg,
    Lit,
    Pair,
    Value,
    _enumerate,
    contains,
    identity_fn,
    lit,
    nat,
    num,
    num_of,
    size,
    tuple_items,
    tuple_value,
    validate_fn,
)


@dataclass(frozen=True, slots=True)
class Var:
    idx: Value


@dataclass(frozen=True, slots=True)
class One:
    pass


ONE = One()


@dataclass(frozen=True)
class Sigma:
    set: FinSetExpr
    branches: tuple[tuple[Value, DescCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, DescCode]:
        return dict(self.branches)

    def branch(self, v: Value) -> DescCode:
        try:
            return self._lookup[v]
        except KeyError:
            raise DomainError(f"no branch for {v}") from None


@dataclass(frozen=True)
class Pi:
    set: FinSetExpr
    branches: tuple[tuple[Value, DescCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, DescCode]:
        return dict(self.branches)

    def branch(self, v: Value) -> DescCode:
        try:
            return self._lookup[v]
        except KeyError:
            raise DomainError(f"no branch for {v}") from None


DescCode = Var | One | Sigma | Pi


def sigma(s: FinSetExpr, fn: Callable[[Value], DescCode]) -> Sigma:
    return Sigma(s, tuple((v, fn(v)) for v in _enumerate(s)))


def pi(s: FinSetExpr, fn: Callable[[Value], DescCode]) -> Pi:
    return Pi(s, tuple((v, fn(v)) for v in _enumerate(s)))


@dataclass(frozen=True)
class DescFam:
    in_idx: FinSetExpr
    out_idx: FinSetExpr
    at: tuple[tuple[Value, DescCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, DescCode]:
        return dict(self.at)

    def __call__(self, j: Value) -> DescCode:
        try:
            return self._lookup[j]
        except KeyError:
            raise DomainError(f"{j} is not an output index of the description") from None

    @classmethod
    def tabulate(cls, in_idx: FinSetExpr, out_idx: FinSetExpr, fn: Callable[[Value], DescCode]) -> DescFam:
        return cls(in_idx, out_idx, tuple((j, fn(j)) for j in _enumerate(out_idx)))

    @property
    def is_endo(self) -> bool:
        return _enumerate(self.in_idx) == _enumerate(self.out_idx)


# --------------------------------------------------------------------------
# Well-formedness


def validate_code(code: DescCode, in_idx: FinSetExpr, where: str = "") -> list[str]:
    match code:
        case Var(i):
            return [] if contains(in_idx, i) else [f"{where}: var {i} is not an input index"]
        case One():
            return []
        case Sigma(s, branches) | Pi(s, branches):
            return _validate_branches(s, branches, where) + [
                problem
                for v, sub in branches
                for problem in validate_code(sub, in_idx, f"{where}/{v}")
            ]
    return [f"{where}: not a description code: {code!r}"]


def _validate_branches(s: FinSetExpr, branches: tuple, where: str) -> list[str]:
    problems = []
    if isinstance(s, InvImg):
        problems += validate_fn(s.fn)
    keys = [v for v, _ in branches]
    for v in _enumerate(s):
        if v not in keys:
            problems.append(f"{where}: missing branch for {v}")
    elems = set(_enumerate(s))
    for v in keys:
        if v not in elems:
            problems.append(f"{where}: branch {v} is outside its set")
    return problems


def validate_desc(d: DescFam) -> list[str]:
    problems = []
    keys = [j for j, _ in d.at]
    for j in _enumerate(d.out_idx):
        if j not in keys:
            problems.append(f"missing code for output index {j}")
    for j, code in d.at:
        if not contains(d.out_idx, j):
            problems.append(f"code given for {j}, which is not an output index")
        problems += validate_code(code, d.in_idx, str(j))
    return problems


def check_desc(d: DescFam) -> DescFam:
    problems = validate_desc(d)
    if problems:
        raise ValidationError("; ".join(problems), problems)
    return d


# --------------------------------------------------------------------------
# Interpretation


def _same_index(a: FinSetExpr, b: FinSetExpr) -> bool:
    return a == b or _enumerate(a) == _enumerate(b)


@lru_cache(maxsize=200_000)
def interp_code(code: DescCode, x: Family) -> tuple[Value, ...]:
    """Enumerate the interpretation of a single code at ``x``."""
    match code:
        case Var(i):
            return x.elements(i)
        case One():
            return (UNIT,)
        case Sigma(s, _):
            return tuple(Pair(v, t) for v in _enumerate(s) for t in interp_code(code.branch(v), x))
        case Pi(s, _):
            factors = [interp_code(code.branch(v), x) for v in _enumerate(s)]
            return tuple(tuple_value(combo) for combo in itertools.product(*factors))
    raise TypeError(f"not a description code: {code!r}")


def interp_desc(d: DescFam, x: Family) -> Family:
    if not _same_index(x.index, d.in_idx):
        raise IndexMismatch("family index does not match the description's input index")
    return Family(d.out_idx, tuple((j, Lit(interp_code(code, x))) for j, code in d.at))


def member(code: DescCode, v: Value, x: Callable[[Value, Value], bool]) -> bool:
    """Is ``v`` in the interpretation of ``code``, with ``x(i, leaf)`` deciding Var leaves?"""
    match code:
        case Var(i):
            return x(i, v)
        case One():
            return v == UNIT
        case Sigma(s, _):
            return isinstance(v, Pair) and contains(s, v.fst) and member(code.branch(v.fst), v.snd, x)
        case Pi(s, _):
            try:
                items = tuple_items(v)
            except DomainError:
                return False
            elems = _enumerate(s)
            return len(items) == len(elems) and all(
                member(code.branch(e), item, x) for e, item in zip(elems, items)
            )
    return False


def fmap_code(code: DescCode, v: Value, f: Callable[[Value, Value], Value]) -> Value:
    """Functorial action: replace every Var leaf ``w`` at index ``i`` by ``f(i, w)``."""
    match code:
        case Var(i):
            return f(i, v)
        case One():
            return v
        case Sigma():
            return Pair(v.fst, fmap_code(code.branch(v.fst), v.snd, f))
        case Pi(s, _):
            items = tuple_items(v)
            return tuple_value(fmap_code(code.branch(e), item, f) for e, item in zip(_enumerate(s), items))
    raise TypeError(f"not a description code: {code!r}")


def leaves(code: DescCode, v: Value) -> Iterator[tuple[Value, Value]]:
    """The Var leaves of ``v`` as ``(index, value)`` pairs, in position order."""
    match code:
        case Var(i):
            yield i, v
        case One():
            return
        case Sigma():
            yield from leaves(code.branch(v.fst), v.snd)
        case Pi(s, _):
            for e, item in zip(_enumerate(s), tuple_items(v)):
                yield from leaves(code.branch(e), item)


# --------------------------------------------------------------------------
# Least fixpoints, by bounded iteration


@lru_cache(maxsize=4096)
def mu_levels(d: DescFam, depth: int) -> Family:
    """All trees of depth <= ``depth``, per index.

    Trees are ordered by depth first, then by the canonical order of their
    payloads, so the enumeration at ``depth`` is a prefix of the one at
    ``depth + 1``.
    """
    if not d.is_endo:
        raise IndexMismatch("fixpoints need a description with equal input and output indices")
    if depth <= 0:
        return Family.const(d.in_idx, Lit(()))
    prev = mu_levels(d, depth - 1)
    at = []
    for j, code in d.at:
        old = prev.elements(j)
        seen = set(old)
        fresh = [t for t in (Con(p) for p in interp_code(code, prev)) if t not in seen]
        at.append((j, Lit(old + tuple(fresh))))
    return Family(d.in_idx, tuple(at))


def mu_enumerate(d: DescFam, j: Value, depth: int) -> tuple[Con, ...]:
    if not d.is_endo:
        raise IndexMismatch("fixpoints need a description with equal input and output indices")
    if not contains(d.in_idx, j):
        raise DomainError(f"{j} is not an index")
    return mu_levels(d, depth).elements(j)


def well_indexed(d: DescFam, j: Value, t: Value) -> bool:
    if not isinstance(t, Con) or not contains(d.out_idx, j):
        return False
    return member(d(j), t.payload, lambda i, sub: well_indexed(d, i, sub))


def infer_index(d: DescFam, t: Value) -> Value:
    """First output index (canonical order) at which ``t`` is well indexed."""
    for j in _enumerate(d.out_idx):
        if well_indexed(d, j, t):
            return j
    raise IndexMismatch(f"{t} is not well indexed at any index")


# --------------------------------------------------------------------------
# Algebras and folds


@dataclass(frozen=True)
class Algebra:
    """A tabulated algebra ``desc(carrier) -> carrier``.

    Tables may omit payloads whose image would fall outside a truncated
    carrier; folding through such a payload raises ``CarrierOverflow``.
    """

    desc: DescFam
    carrier: Family
    tables: tuple[tuple[Value, FinFn], ...]

    @cached_property
    def _lookup(self) -> dict[Value, FinFn]:
        return dict(self.tables)

    def apply(self, i: Value, payload: Value) -> Value:
        table = self._lookup[i]
        try:
            return table._lookup[payload]
        except KeyError:
            raise CarrierOverflow(f"no algebra image for {payload} at {i}") from None

    def defined(self, i: Value, payload: Value) -> bool:
        return payload in self._lookup[i]._lookup


def tabulate_algebra(
    d: DescFam, carrier: Family, fn: Callable[[Value, Value], Value | None]
) -> Algebra:
    """Build an algebra from ``fn(i, payload)``; ``None`` marks an overflowing payload."""
    if not d.is_endo or not _same_index(carrier.index, d.in_idx):
        raise IndexMismatch("algebras need an endo description and a carrier over its index")
    tables = []
    for i, code in d.at:
        rows = []
        for p in interp_code(code, carrier):
            image = fn(i, p)
            if image is not None:
                rows.append((p, image))
        tables.append((i, FinFn(lit(p for p, _ in rows), carrier(i), tuple(rows))))
    return Algebra(d, carrier, tuple(tables))


def validate_algebra(alg: Algebra) -> list[str]:
    problems = []
    for i, code in alg.desc.at:
        if i not in alg._lookup:
            problems.append(f"missing algebra table at {i}")
            continue
        allowed = set(interp_code(code, alg.carrier))
        for p, image in alg._lookup[i].table:
            if p not in allowed:
                problems.append(f"{i}: {p} is not in the interpretation")
            if not contains(alg.carrier(i), image):
                problems.append(f"{i}: image {image} is outside the carrier")
    return problems


def fold(alg: Algebra, t: Value, i: Value) -> Value:
    if not isinstance(t, Con):
        raise DomainError(f"{t} is not a tree")
    folded = fmap_code(alg.desc(i), t.payload, lambda k, sub: fold(alg, sub, k))
    return alg.apply(i, folded)


def fold_with(d: DescFam, fn: Callable[[Value, Value], Value], t: Value, i: Value) -> Value:
    """Fold with an algebra given as a function ``fn(i, payload)``."""
    folded = fmap_code(d(i), t.payload, lambda k, sub: fold_with(d, fn, sub, k))
    return fn(i, folded)


def length_algebra(d: DescFam, bound: int) -> Algebra:
    """Counts the nodes that have recursive positions, into ``Nat<bound``.

    On lists this is the length; results ``>= bound`` overflow.
    """
    def step(i: Value, p: Value) -> Value | None:
        subs = [num_of(v) for _, v in leaves(d(i), p)]
        n = 1 + sum(subs) if subs else 0
        return num(n) if n < bound else None

    return tabulate_algebra(d, Family.const(d.in_idx, nat(bound)), step)


def constant_algebra(d: DescFam) -> Algebra:
    """The algebra into the terminal family."""
    return tabulate_algebra(d, Family.const(d.in_idx, Lit((UNIT,))), lambda i, p: UNIT)


# --------------------------------------------------------------------------
# Composition, reindexing and its adjoints


def substitute(code: DescCode, e: Callable[[Value], DescCode]) -> DescCode:
    match code:
        case Var(b):
            return e(b)
        case One():
            return code
        case Sigma(s, branches):
            return Sigma(s, tuple((v, substitute(sub, e)) for v, sub in branches))
        case Pi(s, branches):
            return Pi(s, tuple((v, substitute(sub, e)) for v, sub in branches))
    raise TypeError(f"not a description code: {code!r}")


def compose_desc(d: DescFam, e: DescFam) -> DescFam:
    """``d . e``: plug ``e`` into every Var of ``d``."""
    if not _same_index(d.in_idx, e.out_idx):
        raise IndexMismatch("outer input index must equal inner output index")
    return DescFam(e.in_idx, d.out_idx, tuple((c, substitute(code, e)) for c, code in d.at))


def rename_vars(code: DescCode, f: Callable[[Value], Value]) -> DescCode:
    return substitute(code, lambda i: Var(f(i)))


def adjoint_desc(kind: str, f: FinFn) -> DescFam:
    """Reindexing along ``f`` (``reindex``) and its left/right adjoints (``exists``/``forall``)."""
    if kind == "reindex":
        return DescFam.tabulate(f.cod, f.dom, lambda a: Var(f(a)))
    if kind in ("exists", "forall"):
        head = Sigma if kind == "exists" else Pi

        def at(b: Value) -> DescCode:
            fibre = InvImg(f, b)
            return head(fibre, tuple((w, Var(w.value)) for w in _enumerate(fibre)))

        return DescFam.tabulate(f.dom, f.cod, at)
    raise ValueError(f"unknown adjoint kind {kind!r}")


def identity_desc(index: FinSetExpr) -> DescFam:
    return adjoint_desc("reindex", identity_fn(index))


def cobase_change(d: DescFam, u: FinFn, v: FinFn) -> DescFam:
    """Push ``d : I -> J`` forward along ``u : I -> K`` and ``v : J -> L``.

    At ``l`` the result sums over the fibre of ``v`` above ``l``; the fibre
    witnesses (``inv-wit j``) are the data frame reindexing needs.
    """
    if not _same_index(u.dom, d.in_idx) or not _same_index(v.dom, d.out_idx):
        raise IndexMismatch("frame maps must start at the description's indices")

    def at(l: Value) -> DescCode:
        fibre = InvImg(v, l)
        return Sigma(fibre, tuple((w, rename_vars(d(w.value), u)) for w in _enumerate(fibre)))

    return DescFam.tabulate(u.cod, v.cod, at)


def counts(d: DescFam, x: Family) -> list[tuple[Value, int]]:
    return [(j, size(s)) for j, s in interp_desc(d, x).at]

