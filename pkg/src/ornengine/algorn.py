"""Algebraic ornaments: index a datatype by the value an algebra folds it to.

For an algebra ``alg : D(X) -> X`` the ornament lives over ``D`` itself.
At index ``(i, x)`` it inserts a container element of ``D(X)`` at ``i``
whose image under ``alg`` is ``x``, then deletes every constructor choice
of ``D(i)`` down to that element's shape and refines each recursive
position ``p`` to ``(next p, value at p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .container import index_of, positions_of, to_container_element
from .desc import Algebra, DescCode, One, Pi, Sigma, Var, fmap_code, fold, interp_code, mu_enumerate, well_indexed
from .errors import CarrierOverflow, CoherenceViolation, DomainError, IndexMismatch
from .finset import REFL, Con, FinFn, Lit, Pair, Value, _enumerate, contains, lit, tuple_items, tuple_value
from .ornament import Insert, OrnCode, OrnFam, forget, interp_orn, skeleton
from .report import Report


@dataclass(frozen=True)
class AlgOrnResult:
    ornament: OrnFam
    meta: Algebra

    @property
    def pairs(self) -> Lit:
        return self.ornament.out_idx


@lru_cache(maxsize=256)
def algebraic_ornament(alg: Algebra) -> AlgOrnResult:
    d = alg.desc
    pairs = lit(Pair(i, x) for i in _enumerate(d.in_idx) for x in alg.carrier.elements(i))
    fst = FinFn.tabulate(pairs, d.in_idx, lambda ix: ix.fst)

    def at(ix: Value) -> OrnCode:
        i, x = ix.fst, ix.snd
        code = d(i)
        elements = [
            to_container_element(code, p)
            for p in interp_code(code, alg.carrier)
            if alg.defined(i, p) and alg.apply(i, p) == x
        ]

        def refine(el: Value):
            values = dict(zip(positions_of(code, el.fst), tuple_items(el.snd)))
            return lambda pos: Pair(index_of(code, el.fst, pos), values[pos])

        return Insert(lit(elements), tuple((el, skeleton(code, el.fst, refine(el))) for el in elements))

    return AlgOrnResult(OrnFam.tabulate(d, fst, fst, at), alg)


def _strip(code: DescCode, v: Value) -> Value:
    """A payload of ``code`` with every Sigma tag removed, as its skeleton interprets."""
    match code:
        case Var() | One():
            return v
        case Sigma():
            return _strip(code.branch(v.fst), v.snd)
        case Pi(s, _):
            return tuple_value(_strip(code.branch(e), item) for e, item in zip(_enumerate(s), tuple_items(v)))
    raise TypeError(f"not a description code: {code!r}")


def remember(alg: Algebra, t: Value, i: Value) -> tuple[Con, Value]:
    """Lift ``t`` (a tree of ``alg.desc`` at ``i``) to the algebraic ornament.

    Returns the lifted tree and its index ``(pair i (fold alg t))``.
    """
    if not isinstance(t, Con):
        raise DomainError(f"{t} is not a tree")
    code = alg.desc(i)
    lifted = fmap_code(code, t.payload, lambda k, sub: remember(alg, sub, k)[0])
    folded = fmap_code(code, t.payload, lambda k, sub: fold(alg, sub, k))
    x = alg.apply(i, folded)
    return Con(Pair(to_container_element(code, folded), _strip(code, lifted))), Pair(i, x)


def recompute(alg: Algebra, t_plus: Value, ix: Value) -> tuple[Con, Value]:
    """Forget the index of ``t_plus`` and re-fold to confirm it; the witness is ``refl``."""
    orn = algebraic_ornament(alg).ornament
    if not contains(orn.out_idx, ix) or not well_indexed(interp_orn(orn), ix, t_plus):
        raise IndexMismatch(f"{t_plus} is not a tree of the algebraic ornament at {ix}")
    t = forget(orn, t_plus, ix)
    x = fold(alg, t, ix.fst)
    if x != ix.snd:
        raise CoherenceViolation(f"refolding gives {x}, not {ix.snd}")
    return t, REFL


def check_coherence(alg: Algebra, i: Value, x: Value, depth: int) -> Report:
    """Trees at ``(i, x)`` of the algebraic ornament against trees at ``i`` folding to ``x``."""
    report = Report("coherence")
    orn = algebraic_ornament(alg).ornament
    ix = Pair(i, x)
    lhs = mu_enumerate(interp_orn(orn), ix, depth)

    def folds_to_x(t: Value) -> bool:
        try:
            return fold(alg, t, i) == x
        except CarrierOverflow:
            return False

    rhs = [t for t in mu_enumerate(alg.desc, i, depth) if folds_to_x(t)]
    report.stats.update(lhs=len(lhs), rhs=len(rhs))
    if len(lhs) != len(rhs):
        report.fail(f"{len(lhs)} ornamented trees but {len(rhs)} trees folding to {x}")
    rhs_set, lhs_set = set(rhs), set(lhs)
    for t_plus in lhs:
        t = forget(orn, t_plus, ix)
        if t not in rhs_set:
            report.fail(f"forget sends {t_plus} to {t}, which does not fold to {x}")
        elif remember(alg, t, i) != (t_plus, ix):
            report.fail(f"remember does not undo forget on {t_plus}")
    for t in rhs:
        t_plus, index = remember(alg, t, i)
        if index != ix or t_plus not in lhs_set:
            report.fail(f"remember sends {t} outside the trees at {ix}")
        elif forget(orn, t_plus, ix) != t:
            report.fail(f"forget does not undo remember on {t}")
    return report

