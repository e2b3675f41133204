"""The standard datatypes every test and golden session works with.

Natural numbers, lists, finite sets, vectors, binary trees and the
height-indexing of binary trees, all truncated to a bound ``n`` so that
every index set is finite.
"""

from __future__ import annotations

from .desc import ONE, DescFam, Pi, Sigma, Var, compose_desc
from .finset import (
    Enum,
    Eq,
    FinFn,
    FinSetExpr,
    Label,
    const_fn,
    identity_fn,
    nat,
    num,
    num_of,
    suc,
)
from .ornament import OUNIT, OrnFam, hcompose, insert, interp_orn, opi, osigma, var_inv

STAR = Label("star")
STAR_IDX = Enum(("star",))
A2 = Enum(("a", "b"))

Z, S = Label("z"), Label("s")
TAGS = Enum(("z", "s"))


def bang(index: FinSetExpr) -> FinFn:
    """The unique map into the one-point index."""
    return const_fn(index, STAR_IDX, STAR)


def nat_desc() -> DescFam:
    return DescFam(STAR_IDX, STAR_IDX, ((STAR, Sigma(TAGS, ((Z, ONE), (S, Var(STAR))))),))


def square_desc() -> DescFam:
    """Binary trees: every node has a left and a right subtree and nothing else."""
    return DescFam(STAR_IDX, STAR_IDX, ((STAR, Pi(Enum(("l", "r")), ((Label("l"), Var(STAR)), (Label("r"), Var(STAR))))),))


def list_orn(a: FinSetExpr = A2) -> OrnFam:
    """Lists as naturals with an element inserted at every successor."""
    code = osigma(TAGS, lambda t: OUNIT if t == Z else insert(a, lambda _: var_inv(STAR)))
    base = nat_desc()
    return OrnFam(base, identity_fn(STAR_IDX), identity_fn(STAR_IDX), ((STAR, code),))


def list_desc(a: FinSetExpr = A2) -> DescFam:
    return interp_orn(list_orn(a))


def fin_orn(n: int) -> OrnFam:
    """Finite sets ``Fin k`` for ``k < n``: pick a predecessor and refine by it."""
    idx = nat(n)

    def at(k):
        return insert(
            idx,
            lambda m: insert(
                Eq(k, suc(m)),
                lambda _: osigma(TAGS, lambda t: OUNIT if t == Z else var_inv(m)),
            ),
        )

    return OrnFam.tabulate(nat_desc(), bang(idx), bang(idx), at)


def fin_desc(n: int) -> DescFam:
    return interp_orn(fin_orn(n))


def vec_orn(n: int, a: FinSetExpr = A2) -> OrnFam:
    """Vectors over lists: index every list by its length, up to ``n - 1``."""
    idx = nat(n)

    def at(k):
        def branch(t):
            if t == Z:
                return insert(Eq(k, num(0)), lambda _: OUNIT)
            return insert(idx, lambda m: insert(Eq(k, suc(m)), lambda _: osigma(a, lambda _: var_inv(m))))

        return osigma(TAGS, branch)

    return OrnFam.tabulate(list_desc(a), bang(idx), bang(idx), at)


def vec_desc(n: int, a: FinSetExpr = A2) -> DescFam:
    return interp_orn(vec_orn(n, a))


def height_orn(n: int) -> OrnFam:
    """Binary trees indexed by height, the right subtree at most one taller.

    A node at height ``k`` is either balanced (both subtrees at ``k``) or
    right-leaning (left at ``k``, right at some ``m`` with ``m = k + 1``).
    Heights stop at ``n - 1``.
    """
    idx = nat(n)
    sides = Enum(("l", "r"))
    balance = Enum(("lt", "eq"))

    def at(k):
        def lean(tag):
            if tag == Label("eq"):
                return opi(sides, lambda _: var_inv(k))
            return insert(
                idx,
                lambda m: insert(
                    Eq(m, suc(k)),
                    lambda _: opi(sides, lambda side: var_inv(k) if side == Label("l") else var_inv(m)),
                ),
            )

        return insert(balance, lean)

    return OrnFam.tabulate(square_desc(), bang(idx), bang(idx), at)


def height_desc(n: int) -> DescFam:
    return interp_orn(height_orn(n))


def bintree_desc(a: FinSetExpr = A2) -> DescFam:
    """Lists of pairs of subtrees, i.e. ``ListD . SquareD``."""
    return compose_desc(list_desc(a), square_desc())


def balanced_orn(n: int, a: FinSetExpr = A2) -> OrnFam:
    """Vectors of height-indexed pairs ornamenting lists of pairs."""
    return hcompose(vec_orn(n, a), height_orn(n))


def twice(n: int) -> FinFn:
    """``k -> 2k`` from ``Nat<n`` into ``Nat<2n``."""
    return FinFn.tabulate(nat(n), nat(2 * n), lambda k: num(2 * num_of(k)))

