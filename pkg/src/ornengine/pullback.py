"""Pullback of two ornaments of the same base.

Given ``o1 : F => H`` and ``o2 : G => H``, the apex is indexed by the
pairs of indices that agree in ``H``.  Its shapes at ``(j1, j2)`` are the
pairs of shapes ``(s1, s2)`` with ``sigma1 s1 = sigma2 s2``; positions are
the shared positions of that base shape and a position ``p`` lives at
``(next1 p, next2 p)``.

The apex is presented three times, once as an ornament of each of ``H``,
``F`` and ``G``.  All three interpret to the same description, so the
ornaments over ``F`` and ``G`` are the two projections.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, replace
from functools import cached_property

from .container import CartMorphism, desc_to_container
from .desc import DescFam, mu_enumerate
from .errors import BaseMismatch
from .finset import FinFn, FinSetExpr, Lit, Pair, Value, _enumerate, lit
from .ornament import Insert, OrnCode, OrnFam, equivalent_descs, forget, interp_orn, orn_to_cart, skeleton
from .report import Report


@dataclass(frozen=True)
class PullbackResult:
    o1: OrnFam
    o2: OrnFam
    apex_orn: OrnFam
    proj1: OrnFam
    proj2: OrnFam

    @property
    def base(self) -> DescFam:
        return self.o1.base

    @cached_property
    def apex(self) -> DescFam:
        return interp_orn(self.apex_orn)

    @property
    def cart1(self) -> CartMorphism:
        return orn_to_cart(self.proj1)

    @property
    def cart2(self) -> CartMorphism:
        return orn_to_cart(self.proj2)


def _set_pullback(f: FinFn, g: FinFn) -> Lit:
    return lit(Pair(a, b) for a in _enumerate(f.dom) for b in _enumerate(g.dom) if f(a) == g(b))


def _shape_pullback(m1: CartMorphism, m2: CartMorphism, j1: Value, j2: Value) -> list[Pair]:
    return [
        Pair(s1, s2)
        for s1 in m1.src.shapes(j1)
        for s2 in m2.src.shapes(j2)
        if m1.sigma(j1, s1) == m2.sigma(j2, s2)
    ]


def pullback_orn(o1: OrnFam, o2: OrnFam) -> PullbackResult:
    if not equivalent_descs(o1.base, o2.base):
        raise BaseMismatch("the two ornaments are over different descriptions")
    m1, m2 = orn_to_cart(o1), orn_to_cart(o2)
    f, g = interp_orn(o1), interp_orn(o2)
    ins = _set_pullback(o1.u, o2.u)
    outs = _set_pullback(o1.v, o2.v)

    def apex_code(over: Callable[[Value], tuple], jj: Value) -> OrnCode:
        j1, j2 = jj.fst, jj.snd
        pairs = _shape_pullback(m1, m2, j1, j2)

        def branch(sp: Pair) -> OrnCode:
            n1, n2 = m1.src.next(j1, sp.fst), m2.src.next(j2, sp.snd)
            code, sh = over(sp)
            return skeleton(code, sh, lambda p: Pair(n1(p), n2(p)))

        return Insert(lit(pairs), tuple((sp, branch(sp)) for sp in pairs))

    def fst(p: Pair) -> Value:
        return p.fst

    def snd(p: Pair) -> Value:
        return p.snd

    def h_frame(o: OrnFam, dom: FinSetExpr, which: str) -> FinFn:
        base_map = getattr(o, which)
        return FinFn.tabulate(dom, base_map.cod, lambda p: base_map(p.fst))

    apex_orn = OrnFam.tabulate(
        o1.base,
        h_frame(o1, ins, "u"),
        h_frame(o1, outs, "v"),
        lambda jj: apex_code(lambda sp: (o1.base(o1.v(jj.fst)), m1.sigma(jj.fst, sp.fst)), jj),
    )
    proj1 = OrnFam.tabulate(
        f,
        FinFn.tabulate(ins, f.in_idx, fst),
        FinFn.tabulate(outs, f.out_idx, fst),
        lambda jj: apex_code(lambda sp: (f(jj.fst), sp.fst), jj),
    )
    proj2 = OrnFam.tabulate(
        g,
        FinFn.tabulate(ins, g.in_idx, snd),
        FinFn.tabulate(outs, g.out_idx, snd),
        lambda jj: apex_code(lambda sp: (g(jj.snd), sp.snd), jj),
    )
    return PullbackResult(o1, o2, apex_orn, proj1, proj2)


def without_shape(r: PullbackResult, jj: Value, sp: Value) -> PullbackResult:
    """The same square with the apex shape ``sp`` at ``jj`` dropped from every presentation."""

    def drop(o: OrnFam) -> OrnFam:
        def at(j: Value, code: OrnCode) -> OrnCode:
            if j != jj:
                return code
            kept = tuple((e, sub) for e, sub in code.branches if e != sp)
            return Insert(lit(e for e, _ in kept), kept)

        return replace(o, at=tuple((j, at(j, code)) for j, code in o.at))

    return replace(r, apex_orn=drop(r.apex_orn), proj1=drop(r.proj1), proj2=drop(r.proj2))


def check_pullback_square(r: PullbackResult, depth: int) -> Report:
    """Commutation of the forget square on apex trees, and set-level universality.

    Trees only exist when the apex has equal input and output indices; for
    other apexes only the shape-level universality is checked.
    """
    report = Report("pullback")
    apex = r.apex
    trees = 0
    for jj in _enumerate(apex.out_idx) if apex.is_endo and r.o1.base.is_endo else ():
        for t in mu_enumerate(apex, jj, depth):
            trees += 1
            left = forget(r.o1, forget(r.proj1, t, jj), jj.fst)
            right = forget(r.o2, forget(r.proj2, t, jj), jj.snd)
            if left != right:
                report.fail(f"forget square does not commute on {t} at {jj}: {left} vs {right}")

    m1, m2 = orn_to_cart(r.o1), orn_to_cart(r.o2)
    p1, p2 = r.cart1, r.cart2
    expected_idx = _enumerate(_set_pullback(r.o1.v, r.o2.v))
    if _enumerate(apex.out_idx) != expected_idx:
        report.fail("apex indices are not the pullback of the output frames")
    shapes = 0
    container = desc_to_container(apex)
    for jj in expected_idx:
        if jj not in container._shapes:
            continue
        images = [Pair(p1.sigma(jj, sh), p2.sigma(jj, sh)) for sh in container.shapes(jj)]
        shapes += len(images)
        expected = _shape_pullback(m1, m2, jj.fst, jj.snd)
        if len(set(images)) != len(images):
            report.fail(f"two apex shapes at {jj} project to the same pair")
        missing = [sp for sp in expected if sp not in set(images)]
        extra = [sp for sp in images if sp not in set(expected)]
        for sp in missing:
            report.fail(f"shape pair {sp} at {jj} is in the pullback but not in the apex")
        for sp in extra:
            report.fail(f"apex shape at {jj} projects to {sp}, which is outside the pullback")
    report.stats.update(indices=len(expected_idx), shapes=shapes, trees=trees)
    return report

