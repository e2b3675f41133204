"""Finite sets, their canonical inhabitants, and total finite functions.

Everything else in the engine enumerates over this layer, so the
enumeration order is fixed once and for all:

* ``Enum`` in declaration order,
* ``Sum`` lists every left element (``InL``) before every right one (``InR``),
* ``Prod`` is lexicographic, first component major,
* ``Eq(v, w)`` is ``[Refl]`` when ``v == w`` and empty otherwise,
* ``InvImg(f, t)`` lists ``InvWit(a)`` for each preimage ``a`` in domain order,
* ``Lit`` lists its values as given (duplicates removed).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import DomainError, UnresolvedName

# --------------------------------------------------------------------------
# Values


@dataclass(frozen=True, slots=True)
class Label:
    name: str

    def __str__(self) -> str:
        return f"(num {self.name})" if self.name.isdigit() else self.name


@dataclass(frozen=True, slots=True)
class Pair:
    fst: Value
    snd: Value

    def __str__(self) -> str:
        return f"(pair {self.fst} {self.snd})"


@dataclass(frozen=True, slots=True)
class InL:
    value: Value

    def __str__(self) -> str:
        return f"(inl {self.value})"


@dataclass(frozen=True, slots=True)
class InR:
    value: Value

    def __str__(self) -> str:
        return f"(inr {self.value})"


@dataclass(frozen=True, slots=True)
class Refl:
    def __str__(self) -> str:
        return "refl"


@dataclass(frozen=True, slots=True)
class InvWit:
    value: Value

    def __str__(self) -> str:
        return f"(inv-wit {self.value})"


@dataclass(frozen=True, slots=True)
class Con:
    """Constructor node of a fixpoint tree."""

    payload: Value

    def __str__(self) -> str:
        return f"(con {self.payload})"


@dataclass(frozen=True, slots=True)
class Unit:
    def __str__(self) -> str:
        return "unit"


Value = Label | Pair | InL | InR | Refl | InvWit | Con | Unit

UNIT = Unit()
REFL = Refl()


def num(k: int) -> Label:
    return Label(str(k))


def num_of(v: Value) -> int:
    if isinstance(v, Label) and v.name.isdigit():
        return int(v.name)
    raise DomainError(f"{v} is not a numeral label")


def suc(v: Value) -> Label:
    return num(num_of(v) + 1)


def tuple_value(items: Iterable[Value]) -> Value:
    """Reify an ordered tuple as right-nested pairs ending in ``unit``."""
    out: Value = UNIT
    for item in reversed(list(items)):
        out = Pair(item, out)
    return out


def tuple_items(v: Value) -> list[Value]:
    items = []
    while isinstance(v, Pair):
        items.append(v.fst)
        v = v.snd
    if v != UNIT:
        raise DomainError(f"not a tuple value: {v}")
    return items


def depth(v: Value) -> int:
    """Constructor depth: ``Con`` adds one, everything else is transparent."""
    match v:
        case Con(p):
            return 1 + depth(p)
        case Pair(a, b):
            return max(depth(a), depth(b))
        case InL(a) | InR(a) | InvWit(a):
            return depth(a)
        case _:
            return 0


# --------------------------------------------------------------------------
# Set expressions


@dataclass(frozen=True, slots=True)
class Enum:
    labels: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Sum:
    left: FinSetExpr
    right: FinSetExpr


@dataclass(frozen=True, slots=True)
class Prod:
    first: FinSetExpr
    second: FinSetExpr


@dataclass(frozen=True, slots=True)
class Eq:
    lhs: Value
    rhs: Value


@dataclass(frozen=True, slots=True)
class InvImg:
    fn: FinFn
    target: Value


@dataclass(frozen=True, slots=True)
class Named:
    alias: str


@dataclass(frozen=True, slots=True)
class Lit:
    """An explicitly listed set; used for computed sets such as interpretations."""

    values: tuple[Value, ...]


FinSetExpr = Enum | Sum | Prod | Eq | InvImg | Named | Lit
SET_TYPES = (Enum, Sum, Prod, Eq, InvImg, Named, Lit)


def nat(n: int) -> Enum:
    """Truncated naturals ``Nat<n``, i.e. the labels ``0 .. n-1``."""
    return Enum(tuple(str(k) for k in range(n)))


def lit(values: Iterable[Value]) -> Lit:
    return Lit(tuple(values))


def resolve(s: FinSetExpr, env: Mapping[str, FinSetExpr]) -> FinSetExpr:
    """Substitute every ``Named`` alias from ``env``."""
    match s:
        case Named(alias):
            if alias not in env:
                raise UnresolvedName(alias)
            return resolve(env[alias], env)
        case Sum(a, b):
            return Sum(resolve(a, env), resolve(b, env))
        case Prod(a, b):
            return Prod(resolve(a, env), resolve(b, env))
        case _:
            return s


def enumerate_set(s: FinSetExpr, env: Mapping[str, FinSetExpr] | None = None) -> tuple[Value, ...]:
    if env is not None:
        s = resolve(s, env)
    return _enumerate(s)


@lru_cache(maxsize=65536)
def _enumerate(s: FinSetExpr) -> tuple[Value, ...]:
    match s:
        case Enum(labels):
            return tuple(dict.fromkeys(Label(n) for n in labels))
        case Sum(a, b):
            return tuple(InL(v) for v in _enumerate(a)) + tuple(InR(v) for v in _enumerate(b))
        case Prod(a, b):
            right = _enumerate(b)
            return tuple(Pair(x, y) for x in _enumerate(a) for y in right)
        case Eq(lhs, rhs):
            return (REFL,) if lhs == rhs else ()
        case InvImg(f, t):
            return tuple(InvWit(a) for a, b in f.table if b == t)
        case Lit(values):
            return tuple(dict.fromkeys(values))
        case Named(alias):
            raise UnresolvedName(alias)
    raise TypeError(f"not a set expression: {s!r}")


@lru_cache(maxsize=65536)
def _members(s: FinSetExpr) -> frozenset[Value]:
    return frozenset(_enumerate(s))


def contains(s: FinSetExpr, v: Value, env: Mapping[str, FinSetExpr] | None = None) -> bool:
    if env is not None:
        s = resolve(s, env)
    return v in _members(s)


def size(s: FinSetExpr) -> int:
    return len(_enumerate(s))


# --------------------------------------------------------------------------
# Finite functions


@dataclass(frozen=True)
class FinFn:
    """A total function between finite sets, stored as its graph."""

    dom: FinSetExpr
    cod: FinSetExpr
    table: tuple[tuple[Value, Value], ...]

    @cached_property
    def _lookup(self) -> dict[Value, Value]:
        return dict(self.table)

    def __call__(self, v: Value) -> Value:
        try:
            return self._lookup[v]
        except KeyError:
            raise DomainError(f"{v} is not in the domain of the function") from None

    @classmethod
    def tabulate(cls, dom: FinSetExpr, cod: FinSetExpr, fn: Callable[[Value], Value]) -> FinFn:
        return cls(dom, cod, tuple((a, fn(a)) for a in _enumerate(dom)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFn):
            return NotImplemented
        return _enumerate(self.dom) == _enumerate(other.dom) and self._lookup == other._lookup

    def __hash__(self) -> int:
        return hash(frozenset(self.table))


def validate_fn(f: FinFn) -> list[str]:
    problems = []
    dom = _enumerate(f.dom)
    keys = [a for a, _ in f.table]
    if len(set(keys)) != len(keys):
        problems.append("function table has duplicate entries")
    for a in dom:
        if a not in f._lookup:
            problems.append(f"function table is missing {a}")
    dom_set = set(dom)
    for a, b in f.table:
        if a not in dom_set:
            problems.append(f"function table entry {a} is outside the domain")
        if not contains(f.cod, b):
            problems.append(f"function image {b} of {a} is outside the codomain")
    return problems


def apply_fn(f: FinFn, v: Value) -> Value:
    if not contains(f.dom, v):
        raise DomainError(f"{v} is not in the domain")
    return f(v)


def inverse_image(f: FinFn, t: Value) -> InvImg:
    if not contains(f.cod, t):
        raise DomainError(f"{t} is not in the codomain")
    return InvImg(f, t)


def identity_fn(s: FinSetExpr) -> FinFn:
    return FinFn.tabulate(s, s, lambda v: v)


def const_fn(dom: FinSetExpr, cod: FinSetExpr, value: Value) -> FinFn:
    return FinFn.tabulate(dom, cod, lambda _: value)


def compose_fn(g: FinFn, f: FinFn) -> FinFn:
    """``g . f``"""
    return FinFn.tabulate(f.dom, g.cod, lambda v: g(f(v)))


# --------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class Family:
    """An index-set-indexed family of finite sets."""

    index: FinSetExpr
    at: tuple[tuple[Value, FinSetExpr], ...]

    @cached_property
    def _lookup(self) -> dict[Value, FinSetExpr]:
        return dict(self.at)

    def __call__(self, i: Value) -> FinSetExpr:
        try:
            return self._lookup[i]
        except KeyError:
            raise DomainError(f"{i} is not an index of the family") from None

    def elements(self, i: Value) -> tuple[Value, ...]:
        return _enumerate(self(i))

    def counts(self) -> list[tuple[Value, int]]:
        return [(i, size(s)) for i, s in self.at]

    @classmethod
    def tabulate(cls, index: FinSetExpr, fn: Callable[[Value], FinSetExpr | Iterable[Value]]) -> Family:
        at = []
        for i in _enumerate(index):
            s = fn(i)
            at.append((i, s if isinstance(s, SET_TYPES) else lit(s)))
        return cls(index, tuple(at))

    @classmethod
    def const(cls, index: FinSetExpr, s: FinSetExpr) -> Family:
        return cls.tabulate(index, lambda _: s)


def iter_sizes(index: FinSetExpr, max_size: int) -> Iterator[Family]:
    """Every family over ``index`` of generic sets ``Nat<k`` with ``k <= max_size``."""
    idx = _enumerate(index)

    def go(k: int, acc: list[tuple[Value, FinSetExpr]]) -> Iterator[Family]:
        if k == len(idx):
            yield Family(index, tuple(acc))
            return
        for n in range(max_size + 1):
            yield from go(k + 1, acc + [(idx[k], Enum(tuple(f"x{n}_{m}" for m in range(n))))])

    yield from go(0, [])
