"""One-hole contexts of containers, plugging, and derivatives of ornaments."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .container import CartMorphism, Container, check_cartesian, interp_container
from .errors import DomainError, IndexMismatch, NotCartesian
from .finset import Family, Pair, Value, _enumerate, contains, tuple_items, tuple_value
from .report import Report


@dataclass(frozen=True)
class ZipperCtx:
    """An element of ``c`` at ``j`` with the value at ``hole`` taken out."""

    container: Container
    j: Value
    sh: Value
    hole: Value
    rest: tuple[tuple[Value, Value], ...]

    @property
    def index(self) -> Value:
        return self.container.next(self.j, self.sh)(self.hole)


def derive_container(c: Container, i: Value) -> Container:
    """Shapes ``(pair sh hole)`` with the hole over ``i``; the hole leaves the positions."""
    if not contains(c.in_idx, i):
        raise DomainError(f"{i} is not an input index of the container")

    def shapes(j: Value) -> list[Value]:
        return [Pair(sh, p) for sh in c.shapes(j) for p in c.positions(j, sh) if c.next(j, sh)(p) == i]

    return Container.build(
        c.in_idx,
        c.out_idx,
        shapes,
        lambda j, hs: [p for p in c.positions(j, hs.fst) if p != hs.snd],
        lambda j, hs, p: c.next(j, hs.fst)(p),
    )


def contexts(c: Container, i: Value, x: Family, j: Value) -> Iterator[ZipperCtx]:
    """Every one-hole context at ``j`` of ``c`` filled from ``x``."""
    d = derive_container(c, i)
    for el in interp_container(d, x).elements(j):
        sh, hole = el.fst.fst, el.fst.snd
        positions = d.positions(j, el.fst)
        yield ZipperCtx(c, j, sh, hole, tuple(zip(positions, tuple_items(el.snd))))


def plug(ctx: ZipperCtx, x: Family, val: Value) -> Value:
    i = ctx.index
    if not contains(x(i), val):
        raise IndexMismatch(f"{val} does not live at the hole's index {i}")
    rest = dict(ctx.rest)
    items = [val if p == ctx.hole else rest[p] for p in ctx.container.positions(ctx.j, ctx.sh)]
    return Pair(ctx.sh, tuple_value(items))


def check_plug(c: Container, i: Value, x: Family) -> Report:
    """``plug`` is a bijection from contexts times ``x(i)`` onto elements with a chosen position over ``i``."""
    report = Report("plug")
    elements = interp_container(c, x)
    lhs_total = rhs_total = 0
    for j in _enumerate(c.out_idx):
        chosen = set()
        for el in elements.elements(j):
            n = c.next(j, el.fst)
            chosen.update((el, p) for p in c.positions(j, el.fst) if n(p) == i)
        plugged = [(plug(ctx, x, val), ctx.hole) for ctx in contexts(c, i, x, j) for val in x.elements(i)]
        lhs_total += len(chosen)
        rhs_total += len(plugged)
        if len(set(plugged)) != len(plugged):
            report.fail(f"plug is not injective at {j}")
        if set(plugged) != chosen:
            report.fail(f"plug does not reach every element with a position over {i} at {j}")
    report.stats.update(lhs=lhs_total, rhs=rhs_total)
    return report


def derive_orn(m: CartMorphism, i: Value) -> CartMorphism:
    """``(sh, hole) -> (sigma sh, hole)`` from ``d_i src`` to ``d_(u i) tgt``."""
    report = check_cartesian(m)
    if not report.ok:
        raise NotCartesian("; ".join(report.violations[:3]))
    src = derive_container(m.src, i)
    tgt = derive_container(m.tgt, m.u(i))
    return CartMorphism.build(src, tgt, m.u, m.v, lambda j, hs: Pair(m.sigma(j, hs.fst), hs.snd))
