"""Indexed containers ``S <| P / n`` and cartesian morphisms between them."""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .desc import DescCode, DescFam, One, Pi, Sigma, Var, _same_index, fmap_code, interp_desc, leaves
from .errors import DomainError, FrameMismatch, IndexMismatch, MalformedElement
from .finset import (
    UNIT,
    Family,
    FinFn,
    FinSetExpr,
    Lit,
    Pair,
    Value,
    _enumerate,
    compose_fn,
    contains,
    identity_fn,
    iter_sizes,
    lit,
    tuple_items,
    tuple_value,
)
from .report import Report

Key = tuple[Value, Value]


@dataclass(frozen=True)
class Container:
    """Shapes per output index, positions per shape, next index per position."""

    in_idx: FinSetExpr
    out_idx: FinSetExpr
    shape_sets: tuple[tuple[Value, FinSetExpr], ...]
    position_sets: tuple[tuple[Key, FinSetExpr], ...]
    next_fns: tuple[tuple[Key, FinFn], ...]

    @cached_property
    def _shapes(self) -> dict[Value, FinSetExpr]:
        return dict(self.shape_sets)

    @cached_property
    def _positions(self) -> dict[Key, FinSetExpr]:
        return dict(self.position_sets)

    @cached_property
    def _next(self) -> dict[Key, FinFn]:
        return dict(self.next_fns)

    def shapes(self, j: Value) -> tuple[Value, ...]:
        try:
            return _enumerate(self._shapes[j])
        except KeyError:
            raise DomainError(f"{j} is not an output index of the container") from None

    def positions(self, j: Value, sh: Value) -> tuple[Value, ...]:
        try:
            return _enumerate(self._positions[j, sh])
        except KeyError:
            raise DomainError(f"{sh} is not a shape at {j}") from None

    def next(self, j: Value, sh: Value) -> FinFn:
        return self._next[j, sh]

    def shape_keys(self) -> Iterable[Key]:
        for j in _enumerate(self.out_idx):
            for sh in self.shapes(j):
                yield j, sh

    @classmethod
    def build(cls, in_idx, out_idx, shapes, positions, next_index) -> Container:
        """Tabulate from callables ``shapes(j)``, ``positions(j, sh)``, ``next_index(j, sh, p)``."""
        shape_sets, position_sets, next_fns = [], [], []
        for j in _enumerate(out_idx):
            shs = lit(shapes(j))
            shape_sets.append((j, shs))
            for sh in _enumerate(shs):
                ps = lit(positions(j, sh))
                position_sets.append(((j, sh), ps))
                next_fns.append(((j, sh), FinFn.tabulate(ps, in_idx, lambda p, j=j, sh=sh: next_index(j, sh, p))))
        return cls(in_idx, out_idx, tuple(shape_sets), tuple(position_sets), tuple(next_fns))


def validate_container(c: Container) -> list[str]:
    problems = []
    for j in _enumerate(c.out_idx):
        if j not in c._shapes:
            problems.append(f"no shapes given at {j}")
            continue
        for sh in c.shapes(j):
            if (j, sh) not in c._positions or (j, sh) not in c._next:
                problems.append(f"no positions or next index for shape {sh} at {j}")
                continue
            n = c.next(j, sh)
            if _enumerate(n.dom) != c.positions(j, sh):
                problems.append(f"next index at {j}/{sh} is not defined on exactly the positions")
            for p, i in n.table:
                if not contains(c.in_idx, i):
                    problems.append(f"next index {i} at {j}/{sh}/{p} is not an input index")
    return problems


# --------------------------------------------------------------------------
# Descriptions <-> containers


def shapes_of(code: DescCode) -> tuple[Value, ...]:
    match code:
        case Var() | One():
            return (UNIT,)
        case Pi(s, _):
            factors = [shapes_of(code.branch(v)) for v in _enumerate(s)]
            return tuple(tuple_value(combo) for combo in itertools.product(*factors))
        case Sigma(s, _):
            return tuple(Pair(v, sh) for v in _enumerate(s) for sh in shapes_of(code.branch(v)))
    raise TypeError(f"not a description code: {code!r}")


def positions_of(code: DescCode, sh: Value) -> tuple[Value, ...]:
    match code:
        case Var():
            return (UNIT,)
        case One():
            return ()
        case Pi(s, _):
            return tuple(
                Pair(v, p)
                for v, f in zip(_enumerate(s), tuple_items(sh))
                for p in positions_of(code.branch(v), f)
            )
        case Sigma():
            return positions_of(code.branch(sh.fst), sh.snd)
    raise TypeError(f"not a description code: {code!r}")


def index_of(code: DescCode, sh: Value, p: Value) -> Value:
    match code:
        case Var(i):
            return i
        case Pi(s, _):
            f = dict(zip(_enumerate(s), tuple_items(sh)))
            return index_of(code.branch(p.fst), f[p.fst], p.snd)
        case Sigma():
            return index_of(code.branch(sh.fst), sh.snd, p)
    raise DomainError(f"{p} is not a position of {sh}")


def desc_to_container(d: DescFam) -> Container:
    return Container.build(
        d.in_idx,
        d.out_idx,
        lambda j: shapes_of(d(j)),
        lambda j, sh: positions_of(d(j), sh),
        lambda j, sh, p: index_of(d(j), sh, p),
    )


def container_to_desc(c: Container) -> DescFam:
    def at(j: Value) -> DescCode:
        return Sigma(
            c._shapes[j],
            tuple(
                (sh, Pi(c._positions[j, sh], tuple((p, Var(c.next(j, sh)(p))) for p in c.positions(j, sh))))
                for sh in c.shapes(j)
            ),
        )

    return DescFam.tabulate(c.in_idx, c.out_idx, at)


def to_container_element(code: DescCode, v: Value) -> Value:
    """Split an interpretation element into ``(pair shape (tuple of leaf values))``."""
    shape = fmap_code(code, v, lambda i, w: UNIT)
    return Pair(shape, tuple_value(w for _, w in leaves(code, v)))


def from_container_element(code: DescCode, el: Value) -> Value:
    values = iter(tuple_items(el.snd))
    return fmap_code(code, el.fst, lambda i, _: next(values))


# --------------------------------------------------------------------------
# Interpretation


def interp_container(c: Container, x: Family) -> Family:
    if not _same_index(x.index, c.in_idx):
        raise IndexMismatch("family index does not match the container's input index")

    def at(j: Value) -> list[Value]:
        out = []
        for sh in c.shapes(j):
            n = c.next(j, sh)
            factors = [x.elements(n(p)) for p in c.positions(j, sh)]
            out.extend(Pair(sh, tuple_value(combo)) for combo in itertools.product(*factors))
        return out

    return Family.tabulate(c.out_idx, at)


# --------------------------------------------------------------------------
# Cartesian morphisms


@dataclass(frozen=True)
class CartMorphism:
    """Shape map between containers framed by ``u`` (inputs) and ``v`` (outputs).

    Positions are carried over unchanged, so a cartesian morphism requires
    the source positions of ``sh`` to enumerate exactly like the target
    positions of ``sigma(sh)``.
    """

    src: Container
    tgt: Container
    u: FinFn
    v: FinFn
    sigma_table: tuple[tuple[Key, Value], ...]

    @cached_property
    def _sigma(self) -> dict[Key, Value]:
        return dict(self.sigma_table)

    def sigma(self, j: Value, sh: Value) -> Value:
        try:
            return self._sigma[j, sh]
        except KeyError:
            raise MalformedElement(f"{sh} is not a source shape at {j}") from None

    def sigma_fn(self, j: Value) -> FinFn:
        return FinFn(
            self.src._shapes[j],
            self.tgt._shapes[self.v(j)],
            tuple((sh, self.sigma(j, sh)) for sh in self.src.shapes(j)),
        )

    @classmethod
    def build(cls, src: Container, tgt: Container, u: FinFn, v: FinFn, fn) -> CartMorphism:
        table = tuple(((j, sh), fn(j, sh)) for j, sh in src.shape_keys())
        return cls(src, tgt, u, v, table)


def identity_cart(c: Container) -> CartMorphism:
    return CartMorphism.build(c, c, identity_fn(c.in_idx), identity_fn(c.out_idx), lambda j, sh: sh)


def compose_cart(outer: CartMorphism, inner: CartMorphism) -> CartMorphism:
    """``outer . inner``; the inner target must enumerate like the outer source."""
    if not _same_index(inner.tgt.out_idx, outer.src.out_idx):
        raise FrameMismatch("the inner target and the outer source have different output indices")
    for j in _enumerate(inner.tgt.out_idx):
        if inner.tgt.shapes(j) != outer.src.shapes(j):
            raise FrameMismatch(f"shapes at {j} differ between the composed morphisms")
    return CartMorphism.build(
        inner.src,
        outer.tgt,
        compose_fn(outer.u, inner.u),
        compose_fn(outer.v, inner.v),
        lambda j, sh: outer.sigma(inner.v(j), inner.sigma(j, sh)),
    )


def apply_cart(m: CartMorphism, j: Value, el: Value) -> Value:
    if not isinstance(el, Pair):
        raise MalformedElement(f"{el} is not a (shape, positions) pair")
    sh = el.fst
    if not contains(m.src._shapes.get(j, Lit(())), sh):
        raise MalformedElement(f"{sh} is not a source shape at {j}")
    try:
        items = tuple_items(el.snd)
    except DomainError:
        raise MalformedElement(f"{el.snd} is not a tuple of position values") from None
    if len(items) != len(m.src.positions(j, sh)):
        raise MalformedElement(f"{el} does not fill every position of {sh}")
    return Pair(m.sigma(j, sh), el.snd)


def check_cartesian(m: CartMorphism) -> Report:
    report = Report("cartesian")
    for name, fn, a, b in (("u", m.u, m.src.in_idx, m.tgt.in_idx), ("v", m.v, m.src.out_idx, m.tgt.out_idx)):
        if _enumerate(fn.dom) != _enumerate(a) or not all(contains(b, y) for _, y in fn.table):
            report.fail(f"frame map {name} does not go between the container indices")
    if not report.ok:
        return report
    shapes = 0
    positions = 0
    for j in _enumerate(m.src.out_idx):
        l = m.v(j)
        for sh in m.src.shapes(j):
            shapes += 1
            if (j, sh) not in m._sigma:
                report.fail(f"sigma undefined on shape {sh} at {j}")
                continue
            tsh = m.sigma(j, sh)
            if not contains(m.tgt._shapes[l], tsh):
                report.fail(f"sigma({sh}) = {tsh} is not a target shape at {l}")
                continue
            src_pos = m.src.positions(j, sh)
            tgt_pos = m.tgt.positions(l, tsh)
            if src_pos != tgt_pos:
                report.fail(f"rho: positions of {sh} at {j} differ from positions of {tsh} at {l}")
                continue
            src_next, tgt_next = m.src.next(j, sh), m.tgt.next(l, tsh)
            for p in src_pos:
                positions += 1
                if m.u(src_next(p)) != tgt_next(p):
                    report.fail(f"q: u(next {p}) = {m.u(src_next(p))} but target next is {tgt_next(p)} (shape {sh} at {j})")
    report.stats.update(shapes=shapes, positions=positions)
    return report


def check_roundtrip(d: DescFam, max_size: int) -> Report:
    """``D``, its container and the description of that container agree on every small family.

    Besides counts, checks that splitting into container form is a
    bijection and that ``from_container_element`` undoes it.
    """
    report = Report("roundtrip")
    c = desc_to_container(d)
    back = container_to_desc(c)
    families = 0
    for x in iter_sizes(d.in_idx, max_size):
        families += 1
        direct, via, again = interp_desc(d, x), interp_container(c, x), interp_desc(back, x)
        for j, code in d.at:
            a, b, e = direct.elements(j), via.elements(j), again.elements(j)
            if not len(a) == len(b) == len(e):
                report.fail(f"counts at {j} differ: {len(a)}, {len(b)}, {len(e)} (family {x.counts()})")
                continue
            split = [to_container_element(code, v) for v in a]
            if len(set(split)) != len(split) or set(split) != set(b):
                report.fail(f"container form at {j} is not a bijection (family {x.counts()})")
            if set(e) != set(b):
                report.fail(f"the description of the container disagrees at {j} (family {x.counts()})")
            for v, el in zip(a, split):
                if from_container_element(code, el) != v:
                    report.fail(f"{v} does not survive the round trip at {j}")
    report.stats.update(families=families)
    return report
