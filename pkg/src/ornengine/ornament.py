"""Ornaments: codes that extend, fix and re-index a base description.

An ``OrnFam`` over ``base : DescFam(K, L)`` framed by ``u : I -> K`` and
``v : J -> L`` gives, for every ``j`` in ``J``, a code aligned with
``base(v j)``.  Its interpretation is a description ``DescFam(I, J)`` and
``orn_to_cart`` exhibits that description as a cartesian morphism onto the
base.  ``cart_to_orn`` goes back.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .container import (
    CartMorphism,
    apply_cart,
    check_cartesian,
    compose_cart,
    container_to_desc,
    desc_to_container,
    from_container_element,
    to_container_element,
)
from .desc import (
    Algebra,
    DescCode,
    DescFam,
    One,
    Pi,
    Sigma,
    Var,
    _same_index,
    cobase_change,
    compose_desc,
    fmap_code,
    infer_index,
    interp_code,
    mu_enumerate,
)
from .errors import AlignmentError, DomainError, FrameMismatch, NotCartesian, ValidationError
from .finset import (
    UNIT,
    Con,
    Family,
    FinFn,
    FinSetExpr,
    InvImg,
    InvWit,
    Pair,
    Value,
    _enumerate,
    compose_fn,
    contains,
    depth,
    identity_fn,
    lit,
    tuple_items,
    tuple_value,
)
from .report import Report


@dataclass(frozen=True)
class Insert:
    """Extend with a new Sigma over ``set``."""

    set: FinSetExpr
    branches: tuple[tuple[Value, OrnCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, OrnCode]:
        return dict(self.branches)

    def branch(self, v: Value) -> OrnCode:
        try:
            return self._lookup[v]
        except KeyError:
            raise AlignmentError(f"insert has no branch for {v}") from None


@dataclass(frozen=True)
class Delete:
    """Fix the choice of a base Sigma to ``witness``."""

    witness: Value
    rest: OrnCode


@dataclass(frozen=True, slots=True)
class VarInv:
    """Refine a base ``Var k`` to ``Var i``; ``w`` is ``(inv-wit i)`` with ``u i = k``."""

    w: Value


@dataclass(frozen=True, slots=True)
class OUnit:
    pass


@dataclass(frozen=True)
class OSigma:
    branches: tuple[tuple[Value, OrnCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, OrnCode]:
        return dict(self.branches)

    def branch(self, v: Value) -> OrnCode:
        try:
            return self._lookup[v]
        except KeyError:
            raise AlignmentError(f"copied sigma has no branch for {v}") from None


@dataclass(frozen=True)
class OPi:
    branches: tuple[tuple[Value, OrnCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, OrnCode]:
        return dict(self.branches)

    def branch(self, v: Value) -> OrnCode:
        try:
            return self._lookup[v]
        except KeyError:
            raise AlignmentError(f"copied pi has no branch for {v}") from None


OrnCode = Insert | Delete | VarInv | OUnit | OSigma | OPi
OUNIT = OUnit()


def insert(s: FinSetExpr, fn: Callable[[Value], OrnCode]) -> Insert:
    return Insert(s, tuple((v, fn(v)) for v in _enumerate(s)))


def osigma(s: FinSetExpr, fn: Callable[[Value], OrnCode]) -> OSigma:
    return OSigma(tuple((v, fn(v)) for v in _enumerate(s)))


def opi(s: FinSetExpr, fn: Callable[[Value], OrnCode]) -> OPi:
    return OPi(tuple((v, fn(v)) for v in _enumerate(s)))


def var_inv(i: Value) -> VarInv:
    return VarInv(i if isinstance(i, InvWit) else InvWit(i))


@dataclass(frozen=True)
class OrnFam:
    base: DescFam
    u: FinFn
    v: FinFn
    at: tuple[tuple[Value, OrnCode], ...]

    @cached_property
    def _lookup(self) -> dict[Value, OrnCode]:
        return dict(self.at)

    def __call__(self, j: Value) -> OrnCode:
        try:
            return self._lookup[j]
        except KeyError:
            raise DomainError(f"{j} is not an index of the ornament") from None

    @property
    def in_idx(self) -> FinSetExpr:
        return self.u.dom

    @property
    def out_idx(self) -> FinSetExpr:
        return self.v.dom

    @classmethod
    def tabulate(cls, base: DescFam, u: FinFn, v: FinFn, fn: Callable[[Value], OrnCode]) -> OrnFam:
        return cls(base, u, v, tuple((j, fn(j)) for j in _enumerate(v.dom)))


# --------------------------------------------------------------------------
# Alignment and interpretation


def validate_orn_code(o: OrnCode, code: DescCode, u: FinFn, where: str = "") -> list[str]:
    def branches_cover(s: FinSetExpr, branches) -> list[str]:
        keys = [k for k, _ in branches]
        missing = [f"{where}: missing branch for {e}" for e in _enumerate(s) if e not in keys]
        members = set(_enumerate(s))
        extra = [f"{where}: branch {k} is outside its set" for k in keys if k not in members]
        return missing + extra

    match o, code:
        case Insert(s, branches), _:
            return branches_cover(s, branches) + [
                p for e, sub in branches for p in validate_orn_code(sub, code, u, f"{where}/{e}")
            ]
        case Delete(w, rest), Sigma(s, _):
            if not contains(s, w):
                return [f"{where}: delete witness {w} is not in the deleted set"]
            return validate_orn_code(rest, code.branch(w), u, f"{where}/{w}")
        case VarInv(w), Var(k):
            if not contains(InvImg(u, k), w):
                return [f"{where}: {w} is not in the inverse image of {k}"]
            return []
        case OUnit(), One():
            return []
        case (OSigma(branches), Sigma(s, _)) | (OPi(branches), Pi(s, _)):
            problems = branches_cover(s, branches)
            if problems:
                return problems
            return [p for e, sub in branches for p in validate_orn_code(sub, code.branch(e), u, f"{where}/{e}")]
    return [f"{where}: {type(o).__name__} does not align with {type(code).__name__}"]


def validate_orn(o: OrnFam) -> list[str]:
    problems = []
    if not _same_index(o.u.cod, o.base.in_idx) or not _same_index(o.v.cod, o.base.out_idx):
        return ["frame maps must land in the base description's indices"]
    keys = [j for j, _ in o.at]
    for j in _enumerate(o.out_idx):
        if j not in keys:
            problems.append(f"missing ornament code for index {j}")
    for j, code in o.at:
        if not contains(o.out_idx, j):
            problems.append(f"ornament code given for {j}, which is not an index")
            continue
        problems += validate_orn_code(code, o.base(o.v(j)), o.u, str(j))
    return problems


def check_orn(o: OrnFam) -> OrnFam:
    problems = validate_orn(o)
    if problems:
        raise ValidationError("; ".join(problems), problems)
    return o


def interp_orn_code(o: OrnCode, code: DescCode) -> DescCode:
    match o, code:
        case Insert(s, branches), _:
            return Sigma(s, tuple((e, interp_orn_code(sub, code)) for e, sub in branches))
        case Delete(w, rest), Sigma():
            return interp_orn_code(rest, code.branch(w))
        case VarInv(InvWit(i)), Var():
            return Var(i)
        case OUnit(), One():
            return code
        case OSigma(branches), Sigma(s, _):
            return Sigma(s, tuple((e, interp_orn_code(sub, code.branch(e))) for e, sub in branches))
        case OPi(branches), Pi(s, _):
            return Pi(s, tuple((e, interp_orn_code(sub, code.branch(e))) for e, sub in branches))
    raise AlignmentError(f"{type(o).__name__} does not align with {type(code).__name__}")


@lru_cache(maxsize=1024)
def interp_orn(o: OrnFam) -> DescFam:
    return DescFam(o.in_idx, o.out_idx, tuple((j, interp_orn_code(code, o.base(o.v(j)))) for j, code in o.at))


# --------------------------------------------------------------------------
# Ornaments <-> cartesian morphisms


def forget_shape(o: OrnCode, code: DescCode, sh: Value) -> Value:
    """Erase a shape of the ornamented code down to a shape of the base code."""
    match o, code:
        case Insert(), _:
            return forget_shape(o.branch(sh.fst), code, sh.snd)
        case Delete(w, rest), Sigma():
            return Pair(w, forget_shape(rest, code.branch(w), sh))
        case (VarInv(), Var()) | (OUnit(), One()):
            return UNIT
        case OSigma(), Sigma():
            return Pair(sh.fst, forget_shape(o.branch(sh.fst), code.branch(sh.fst), sh.snd))
        case OPi(), Pi(s, _):
            return tuple_value(
                forget_shape(o.branch(e), code.branch(e), f) for e, f in zip(_enumerate(s), tuple_items(sh))
            )
    raise AlignmentError(f"{type(o).__name__} does not align with {type(code).__name__}")


@lru_cache(maxsize=1024)
def orn_to_cart(o: OrnFam) -> CartMorphism:
    src = desc_to_container(interp_orn(o))
    tgt = desc_to_container(o.base)
    return CartMorphism.build(src, tgt, o.u, o.v, lambda j, sh: forget_shape(o(j), o.base(o.v(j)), sh))


def cart_to_orn(m: CartMorphism) -> OrnFam:
    """The canonical ornament of ``container_to_desc(m.tgt)`` describing ``m.src``."""
    report = check_cartesian(m)
    if not report.ok:
        raise NotCartesian("; ".join(report.violations[:3]))
    base = container_to_desc(m.tgt)

    def at(j: Value) -> OrnCode:
        l = m.v(j)
        sigma_j = m.sigma_fn(j)

        def extension(sh: Value) -> OrnCode:
            fibre = InvImg(sigma_j, sh)
            return Insert(fibre, tuple((w, positions(sh, w.value)) for w in _enumerate(fibre)))

        def positions(sh: Value, src_sh: Value) -> OrnCode:
            n = m.src.next(j, src_sh)
            return OPi(tuple((p, VarInv(InvWit(n(p)))) for p in m.tgt.positions(l, sh)))

        return OSigma(tuple((sh, extension(sh)) for sh in m.tgt.shapes(l)))

    return OrnFam.tabulate(base, m.u, m.v, at)


def skeleton(code: DescCode, sh: Value, refine: Callable[[Value], Value], path=lambda p: p) -> OrnCode:
    """Ornament code over ``code`` that fixes every choice to those of ``sh``.

    Sigmas are deleted with the witness recorded in ``sh``; every Var at
    position ``p`` is refined to ``refine(p)``.
    """
    match code:
        case Var():
            return VarInv(InvWit(refine(path(UNIT))))
        case One():
            return OUNIT
        case Sigma():
            return Delete(sh.fst, skeleton(code.branch(sh.fst), sh.snd, refine, path))
        case Pi(s, _):
            return OPi(
                tuple(
                    (e, skeleton(code.branch(e), f, refine, lambda p, e=e: path(Pair(e, p))))
                    for e, f in zip(_enumerate(s), tuple_items(sh))
                )
            )
    raise TypeError(f"not a description code: {code!r}")


def cart_to_orn_over(m: CartMorphism, d: DescFam) -> OrnFam:
    """Like ``cart_to_orn`` but over ``d`` itself, where ``desc_to_container(d)`` is ``m.tgt``.

    Inserts the source shape first and then deletes every base choice with
    the components of its image, so no round trip through containers is
    needed on the base side.
    """
    report = check_cartesian(m)
    if not report.ok:
        raise NotCartesian("; ".join(report.violations[:3]))

    def at(j: Value) -> OrnCode:
        code = d(m.v(j))
        return Insert(
            m.src._shapes[j],
            tuple(
                (sh, skeleton(code, m.sigma(j, sh), m.src.next(j, sh)))
                for sh in m.src.shapes(j)
            ),
        )

    return OrnFam.tabulate(d, m.u, m.v, at)


# --------------------------------------------------------------------------
# Ornamental algebra and forget


def orn_action(o: OrnFam, j: Value, payload: Value) -> Value:
    """The natural transformation of ``o`` at index ``j``: ornamented payload to base payload."""
    code = interp_orn(o)(j)
    el = apply_cart(orn_to_cart(o), j, to_container_element(code, payload))
    return from_container_element(o.base(o.v(j)), el)


def ornamental_algebra(o: OrnFam, bound: int) -> Algebra:
    """``interp_orn(o)`` folded into base trees of depth <= ``bound``.

    Payloads whose image would be deeper than ``bound`` are left out of the
    table, so folding through them raises ``CarrierOverflow``.
    """
    f = interp_orn(o)
    if not f.is_endo or not o.base.is_endo or o.u != o.v:
        raise FrameMismatch("the ornamental algebra needs an endo ornament with u = v")
    carrier = Family.tabulate(f.in_idx, lambda i: mu_enumerate(o.base, o.u(i), bound))
    tables = []
    for j, code in f.at:
        rows = []
        for p in interp_code(code, carrier):
            image = Con(orn_action(o, j, p))
            if depth(image) <= bound:
                rows.append((p, image))
        tables.append((j, FinFn(lit(p for p, _ in rows), carrier(j), tuple(rows))))
    return Algebra(f, carrier, tuple(tables))


def forget(o: OrnFam, t: Value, j: Value | None = None) -> Con:
    """Fold the ornamental algebra: erase ``t`` (a tree of ``interp_orn(o)`` at ``j``)."""
    f = interp_orn(o)
    if j is None:
        j = infer_index(f, t)
    if not isinstance(t, Con):
        raise DomainError(f"{t} is not a tree")
    payload = fmap_code(f(j), t.payload, lambda i, sub: forget(o, sub, i))
    return Con(orn_action(o, j, payload))


# --------------------------------------------------------------------------
# Identity, composition, frames


def copy_code(code: DescCode) -> OrnCode:
    match code:
        case Var(k):
            return VarInv(InvWit(k))
        case One():
            return OUNIT
        case Sigma(_, branches):
            return OSigma(tuple((e, copy_code(sub)) for e, sub in branches))
        case Pi(_, branches):
            return OPi(tuple((e, copy_code(sub)) for e, sub in branches))
    raise TypeError(f"not a description code: {code!r}")


def identity_orn(d: DescFam) -> OrnFam:
    return OrnFam(d, identity_fn(d.in_idx), identity_fn(d.out_idx), tuple((j, copy_code(c)) for j, c in d.at))


def _fuse(outer: OrnCode, inner: OrnCode, u_inner: FinFn) -> OrnCode:
    """Collapse ``inner`` (over the interpretation of ``outer``) into a code over ``outer``'s base."""
    if isinstance(inner, Insert):
        return Insert(inner.set, tuple((e, _fuse(outer, sub, u_inner)) for e, sub in inner.branches))
    match outer, inner:
        case Insert(s, branches), OSigma():
            return Insert(s, tuple((e, _fuse(sub, inner.branch(e), u_inner)) for e, sub in branches))
        case Insert(), Delete(w, rest):
            return _fuse(outer.branch(w), rest, u_inner)
        case Delete(w, rest), _:
            return Delete(w, _fuse(rest, inner, u_inner))
        case OSigma(branches), OSigma():
            return OSigma(tuple((e, _fuse(sub, inner.branch(e), u_inner)) for e, sub in branches))
        case OSigma(), Delete(w, rest):
            return Delete(w, _fuse(outer.branch(w), rest, u_inner))
        case OPi(branches), OPi():
            return OPi(tuple((e, _fuse(sub, inner.branch(e), u_inner)) for e, sub in branches))
        case VarInv(InvWit(mid)), VarInv(InvWit(i)):
            if u_inner(i) != mid:
                raise AlignmentError(f"refined index {i} does not map to {mid}")
            return inner
        case OUnit(), OUnit():
            return inner
    raise AlignmentError(f"cannot compose {type(inner).__name__} over {type(outer).__name__}")


def equivalent_codes(a: DescCode, b: DescCode) -> bool:
    """Structural equality, comparing sets by their enumerations."""
    match a, b:
        case Var(i), Var(k):
            return i == k
        case One(), One():
            return True
        case (Sigma(s, _), Sigma(t, _)) | (Pi(s, _), Pi(t, _)):
            return (
                type(a) is type(b)
                and _enumerate(s) == _enumerate(t)
                and all(equivalent_codes(a.branch(e), b.branch(e)) for e in _enumerate(s))
            )
    return False


def equivalent_descs(a: DescFam, b: DescFam) -> bool:
    return (
        _same_index(a.in_idx, b.in_idx)
        and _same_index(a.out_idx, b.out_idx)
        and all(equivalent_codes(code, b(j)) for j, code in a.at)
    )


def vcompose(o2: OrnFam, o1: OrnFam) -> OrnFam:
    """Collapse ``o2`` (an ornament of ``interp_orn(o1)``) and ``o1`` into one ornament of ``o1.base``.

    The result interprets to exactly ``interp_orn(o2)`` and is framed by
    ``o1.u . o2.u`` and ``o1.v . o2.v``.
    """
    middle = interp_orn(o1)
    if not _same_index(o2.u.cod, o1.u.dom) or not _same_index(o2.v.cod, o1.v.dom):
        raise FrameMismatch("frames of the composed ornaments do not meet")
    if not equivalent_descs(o2.base, middle):
        raise FrameMismatch("the outer ornament is not over the interpretation of the inner one")
    return OrnFam.tabulate(
        o1.base,
        compose_fn(o1.u, o2.u),
        compose_fn(o1.v, o2.v),
        lambda j: _fuse(o1(o2.v(j)), o2(j), o2.u),
    )


def _hsubst(o: OrnCode, inner: OrnFam) -> OrnCode:
    match o:
        case VarInv(InvWit(j)):
            return inner(j)
        case Insert(s, branches):
            return Insert(s, tuple((e, _hsubst(sub, inner)) for e, sub in branches))
        case Delete(w, rest):
            return Delete(w, _hsubst(rest, inner))
        case OSigma(branches):
            return OSigma(tuple((e, _hsubst(sub, inner)) for e, sub in branches))
        case OPi(branches):
            return OPi(tuple((e, _hsubst(sub, inner)) for e, sub in branches))
    return o


def hcompose(o2: OrnFam, o1: OrnFam) -> OrnFam:
    """Ornament ``compose(F2, F1) => compose(G2, G1)`` from ``o2 : F2 => G2`` and ``o1 : F1 => G1``."""
    if not _same_index(o2.u.dom, o1.v.dom) or o2.u != o1.v:
        raise FrameMismatch("the middle frames of the composed ornaments differ")
    base = compose_desc(o2.base, o1.base)
    return OrnFam(base, o1.u, o2.v, tuple((j, _hsubst(code, o1)) for j, code in o2.at))


def reindex_orn(d: DescFam, u: FinFn, v: FinFn) -> OrnFam:
    """Ornament exhibiting ``d`` over its cobase change along ``u`` and ``v``.

    The base is ``cobase_change(d, u, v)`` (indexed by the codomains of the
    frames); the ornament picks the fibre element ``j`` by deletion and
    copies ``d(j)``, so it interprets back to ``d``.
    """
    base = cobase_change(d, u, v)
    return OrnFam.tabulate(base, u, v, lambda j: Delete(InvWit(j), copy_code(d(j))))



def check_vcompose(o2: OrnFam, o1: OrnFam, depth: int) -> Report:
    """The fused composite forgets like ``o1`` after ``o2`` and matches the composed morphisms."""
    report = Report("vcompose")
    v = vcompose(o2, o1)
    m = orn_to_cart(v)
    report.merge(check_cartesian(m), "composite: ")
    detour = compose_cart(orn_to_cart(o1), orn_to_cart(o2))
    if dict(detour.sigma_table) != m._sigma:
        report.fail("the fused composite and the composed cartesian morphisms have different shape maps")
    f = interp_orn(v)
    trees = 0
    for j in _enumerate(f.out_idx):
        for t in mu_enumerate(f, j, depth):
            trees += 1
            direct = forget(v, t, j)
            stepwise = forget(o1, forget(o2, t, j), o2.v(j))
            if direct != stepwise:
                report.fail(f"on {t} at {j}: composite gives {direct}, stepwise gives {stepwise}")
    report.stats.update(trees=trees)
    return report
