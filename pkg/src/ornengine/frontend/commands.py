"""Every command of the session language.

A command receives the session and its whole form, and returns the payload
of its output record.  Commands that build something take the new name as
their first argument and bind the result in the session.  Trailing depth
arguments are optional and default to the session depth.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

from .. import algorn, container, derivative, desc, finset, ornament, pullback
from ..errors import DomainError
from ..finset import Value
from ..report import Report
from . import syntax
from .session import Session
from .sexpr import Node, SList

Command = Callable[[Session, SList], dict[str, Any]]
COMMANDS: dict[str, Command] = {}


def command(name: str) -> Callable[[Command], Command]:
    def register(fn: Command) -> Command:
        COMMANDS[name] = fn
        return fn

    return register


def args(node: SList, required: int, optional: int = 0) -> list[Node | None]:
    given = list(node.items[1:])
    if not required <= len(given) <= required + optional:
        want = f"{required}" if not optional else f"{required} to {required + optional}"
        raise syntax.fail(node, f"({node.head} ...) takes {want} argument(s), found {len(given)}")
    return given + [None] * (required + optional - len(given))


def show(values) -> list[str]:
    return [str(v) for v in values]


def counts(fam: finset.Family) -> list[list[Any]]:
    return [[str(i), n] for i, n in fam.counts()]


def depth_of(s: Session, node: Node | None) -> int:
    return s.depth if node is None else syntax.integer(node)


def value_of(node: Node | None) -> Value | None:
    return None if node is None else syntax.value(node)


def setexpr(s: Session, node: Node) -> finset.FinSetExpr:
    return syntax.setexpr(node, s.lookup)


def container_of(s: Session, node: Node) -> container.Container:
    if s.kind_of(node, ("cont", "desc")) == "cont":
        return s.lookup("cont", node)
    return container.desc_to_container(s.lookup("desc", node))


def cart_of(s: Session, node: Node) -> container.CartMorphism:
    if s.kind_of(node, ("cart", "orn")) == "cart":
        return s.lookup("cart", node)
    return ornament.orn_to_cart(s.lookup("orn", node))


def defined(s: Session, kind: str, name: Node, obj: Any) -> dict[str, Any]:
    s.bind(kind, name, obj)
    return {"name": syntax.sym(name), "kind": kind}


def report(r: Report) -> dict[str, Any]:
    record = r.to_record()
    return {"check": r.name, **record}


# --------------------------------------------------------------------------
# Sets and functions


@command("enumerate")
def _enumerate(s: Session, node: SList):
    (e,) = args(node, 1)
    values = finset.enumerate_set(setexpr(s, e))
    return {"count": len(values), "values": show(values)}


@command("contains")
def _contains(s: Session, node: SList):
    e, v = args(node, 2)
    return {"result": finset.contains(setexpr(s, e), syntax.value(v))}


@command("apply")
def _apply(s: Session, node: SList):
    f, v = args(node, 2)
    return {"value": str(finset.apply_fn(s.lookup("fn", f), syntax.value(v)))}


@command("inverse-image")
def _inverse_image(s: Session, node: SList):
    f, v = args(node, 2)
    values = finset.enumerate_set(finset.inverse_image(s.lookup("fn", f), syntax.value(v)))
    return {"count": len(values), "values": show(values)}


# --------------------------------------------------------------------------
# Descriptions


@command("interp-count")
def _interp_count(s: Session, node: SList):
    d, fam = args(node, 2)
    dd = s.lookup("desc", d)
    return {"counts": counts(desc.interp_desc(dd, syntax.famspec(fam, dd.in_idx, s.lookup)))}


@command("mu-count")
def _mu_count(s: Session, node: SList):
    d, j, depth = args(node, 2, 1)
    return {"count": len(desc.mu_enumerate(s.lookup("desc", d), syntax.value(j), depth_of(s, depth)))}


@command("mu-enumerate")
def _mu_enumerate(s: Session, node: SList):
    d, j, depth = args(node, 2, 1)
    trees = desc.mu_enumerate(s.lookup("desc", d), syntax.value(j), depth_of(s, depth))
    return {"count": len(trees), "values": show(trees)}


@command("fold")
def _fold(s: Session, node: SList):
    a, t, i = args(node, 2, 1)
    alg = s.lookup("alg", a)
    tree = syntax.value(t)
    index = value_of(i) if i is not None else desc.infer_index(alg.desc, tree)
    return {"value": str(desc.fold(alg, tree, index)), "index": str(index)}


@command("length-alg")
def _length_alg(s: Session, node: SList):
    name, d, bound = args(node, 3)
    return defined(s, "alg", name, desc.length_algebra(s.lookup("desc", d), syntax.integer(bound)))


@command("const-alg")
def _const_alg(s: Session, node: SList):
    name, d = args(node, 2)
    return defined(s, "alg", name, desc.constant_algebra(s.lookup("desc", d)))


@command("compose-desc")
def _compose_desc(s: Session, node: SList):
    name, d, e = args(node, 3)
    return defined(s, "desc", name, desc.compose_desc(s.lookup("desc", d), s.lookup("desc", e)))


@command("adjoint")
def _adjoint(s: Session, node: SList):
    name, kind, f = args(node, 3)
    k = syntax.sym(kind, "adjoint kind")
    if k not in ("reindex", "exists", "forall"):
        raise syntax.fail(kind, f"unknown adjoint kind {k!r}", "reindex", "exists", "forall")
    return defined(s, "desc", name, desc.adjoint_desc(k, s.lookup("fn", f)))


@command("cobase")
def _cobase(s: Session, node: SList):
    name, d, u, v = args(node, 4)
    return defined(s, "desc", name, desc.cobase_change(s.lookup("desc", d), s.lookup("fn", u), s.lookup("fn", v)))


# --------------------------------------------------------------------------
# Containers


@command("to-container")
def _to_container(s: Session, node: SList):
    name, d = args(node, 2)
    c = container.desc_to_container(s.lookup("desc", d))
    out = defined(s, "cont", name, c)
    out["shapes"] = [[str(j), len(c.shapes(j))] for j in finset.enumerate_set(c.out_idx)]
    return out


@command("from-container")
def _from_container(s: Session, node: SList):
    name, c = args(node, 2)
    return defined(s, "desc", name, container.container_to_desc(s.lookup("cont", c)))


@command("cont-interp-count")
def _cont_interp_count(s: Session, node: SList):
    c, fam = args(node, 2)
    cc = container_of(s, c)
    return {"counts": counts(container.interp_container(cc, syntax.famspec(fam, cc.in_idx, s.lookup)))}


@command("roundtrip-check")
def _roundtrip_check(s: Session, node: SList):
    d, size = args(node, 1, 1)
    return report(container.check_roundtrip(s.lookup("desc", d), 2 if size is None else syntax.integer(size)))


@command("identity-cart")
def _identity_cart(s: Session, node: SList):
    name, c = args(node, 2)
    return defined(s, "cart", name, container.identity_cart(container_of(s, c)))


@command("compose-cart")
def _compose_cart(s: Session, node: SList):
    name, outer, inner = args(node, 3)
    return defined(s, "cart", name, container.compose_cart(cart_of(s, outer), cart_of(s, inner)))


@command("cart-check")
def _cart_check(s: Session, node: SList):
    (m,) = args(node, 1)
    return report(container.check_cartesian(cart_of(s, m)))


@command("apply-cart")
def _apply_cart(s: Session, node: SList):
    m, j, el = args(node, 3)
    return {"value": str(container.apply_cart(cart_of(s, m), syntax.value(j), syntax.value(el)))}


# --------------------------------------------------------------------------
# Ornaments


@command("orn-interp")
def _orn_interp(s: Session, node: SList):
    name, o = args(node, 2)
    return defined(s, "desc", name, ornament.interp_orn(s.lookup("orn", o)))


@command("orn-to-cart")
def _orn_to_cart(s: Session, node: SList):
    name, o = args(node, 2)
    return defined(s, "cart", name, ornament.orn_to_cart(s.lookup("orn", o)))


@command("cart-to-orn")
def _cart_to_orn(s: Session, node: SList):
    name, m = args(node, 2)
    return defined(s, "orn", name, ornament.cart_to_orn(cart_of(s, m)))


@command("orn-alg")
def _orn_alg(s: Session, node: SList):
    name, o, depth = args(node, 2, 1)
    return defined(s, "alg", name, ornament.ornamental_algebra(s.lookup("orn", o), depth_of(s, depth)))


@command("forget")
def _forget(s: Session, node: SList):
    o, t, j = args(node, 2, 1)
    orn = s.lookup("orn", o)
    tree = syntax.value(t)
    index = value_of(j) if j is not None else desc.infer_index(ornament.interp_orn(orn), tree)
    return {"value": str(ornament.forget(orn, tree, index)), "index": str(orn.v(index))}


@command("forget-table")
def _forget_table(s: Session, node: SList):
    o, j, depth = args(node, 2, 1)
    orn = s.lookup("orn", o)
    index = syntax.value(j)
    trees = desc.mu_enumerate(ornament.interp_orn(orn), index, depth_of(s, depth))
    return {"count": len(trees), "rows": [[str(t), str(ornament.forget(orn, t, index))] for t in trees]}


@command("identity-orn")
def _identity_orn(s: Session, node: SList):
    name, d = args(node, 2)
    return defined(s, "orn", name, ornament.identity_orn(s.lookup("desc", d)))


@command("vcompose")
def _vcompose(s: Session, node: SList):
    name, o2, o1 = args(node, 3)
    return defined(s, "orn", name, ornament.vcompose(s.lookup("orn", o2), s.lookup("orn", o1)))


@command("vcompose-check")
def _vcompose_check(s: Session, node: SList):
    o2, o1, depth = args(node, 2, 1)
    return report(ornament.check_vcompose(s.lookup("orn", o2), s.lookup("orn", o1), depth_of(s, depth)))


@command("hcompose")
def _hcompose(s: Session, node: SList):
    name, o2, o1 = args(node, 3)
    return defined(s, "orn", name, ornament.hcompose(s.lookup("orn", o2), s.lookup("orn", o1)))


@command("reindex")
def _reindex(s: Session, node: SList):
    name, d, u, v = args(node, 4)
    return defined(s, "orn", name, ornament.reindex_orn(s.lookup("desc", d), s.lookup("fn", u), s.lookup("fn", v)))


# --------------------------------------------------------------------------
# Algebraic ornaments


@command("algorn")
def _algorn(s: Session, node: SList):
    name, a = args(node, 2)
    return defined(s, "orn", name, algorn.algebraic_ornament(s.lookup("alg", a)).ornament)


@command("remember")
def _remember(s: Session, node: SList):
    a, t, i = args(node, 2, 1)
    alg = s.lookup("alg", a)
    tree = syntax.value(t)
    index = value_of(i) if i is not None else desc.infer_index(alg.desc, tree)
    lifted, at = algorn.remember(alg, tree, index)
    return {"value": str(lifted), "index": str(at)}


@command("recompute")
def _recompute(s: Session, node: SList):
    a, t, ix = args(node, 3)
    tree, witness = algorn.recompute(s.lookup("alg", a), syntax.value(t), syntax.value(ix))
    return {"value": str(tree), "witness": str(witness)}


@command("coherence")
def _coherence(s: Session, node: SList):
    a, i, x, depth = args(node, 3, 1)
    alg = s.lookup("alg", a)
    index, target = syntax.value(i), syntax.value(x)
    if not finset.contains(alg.carrier(index), target):
        raise DomainError(f"{target} is not in the carrier at {index}")
    return report(algorn.check_coherence(alg, index, target, depth_of(s, depth)))


# --------------------------------------------------------------------------
# Pullbacks


def _bind_pullback(s: Session, name: Node, r: pullback.PullbackResult) -> dict[str, Any]:
    key = syntax.sym(name)
    s.bind("pullback", name, r)
    s.bind("desc", name, r.apex)
    for suffix, o in (("apex", r.apex_orn), ("proj1", r.proj1), ("proj2", r.proj2)):
        s.env["orn"][f"{key}.{suffix}"] = o
    return {"name": key, "kind": "pullback", "indices": len(finset.enumerate_set(r.apex.out_idx))}


@command("pullback")
def _pullback(s: Session, node: SList):
    name, o1, o2 = args(node, 3)
    return _bind_pullback(s, name, pullback.pullback_orn(s.lookup("orn", o1), s.lookup("orn", o2)))


@command("pullback-drop")
def _pullback_drop(s: Session, node: SList):
    name, p, jj, sp = args(node, 4)
    r = pullback.without_shape(s.lookup("pullback", p), syntax.value(jj), syntax.value(sp))
    return _bind_pullback(s, name, r)


@command("pullback-check")
def _pullback_check(s: Session, node: SList):
    p, depth = args(node, 1, 1)
    return report(pullback.check_pullback_square(s.lookup("pullback", p), depth_of(s, depth)))


# --------------------------------------------------------------------------
# Derivatives


@command("derive")
def _derive(s: Session, node: SList):
    name, c, i = args(node, 3)
    d = derivative.derive_container(container_of(s, c), syntax.value(i))
    out = defined(s, "cont", name, d)
    out["shapes"] = [[str(j), len(d.shapes(j))] for j in finset.enumerate_set(d.out_idx)]
    return out


@command("derive-orn")
def _derive_orn(s: Session, node: SList):
    name, m, i = args(node, 3)
    return defined(s, "cart", name, derivative.derive_orn(cart_of(s, m), syntax.value(i)))


@command("plug")
def _plug(s: Session, node: SList):
    c, i, fam = args(node, 3)
    cc = container_of(s, c)
    return report(derivative.check_plug(cc, syntax.value(i), syntax.famspec(fam, cc.in_idx, s.lookup)))
