"""Independent oracles: plain Python models of the corpus datatypes.

Nothing here goes through descriptions, containers or ornaments.  Trees
are built directly in the value syntax the engine uses, so the engine's
enumerations can be compared with these element by element.
"""

from __future__ import annotations

import itertools
import math

from ornengine.finset import REFL, UNIT, Con, Label, Pair, num, tuple_value

Z, S = Label("z"), Label("s")


def nat_tree(k: int) -> Con:
    t = Con(Pair(Z, UNIT))
    for _ in range(k):
        t = Con(Pair(S, t))
    return t


def list_tree(items) -> Con:
    t = Con(Pair(Z, UNIT))
    for a in reversed(list(items)):
        t = Con(Pair(S, Pair(Label(a), t)))
    return t


def lists_upto(alphabet, n: int):
    """Every list of length <= n, shortest first."""
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


def bounded_list_count(size: int, bound: int) -> int:
    """Lists over ``size`` letters strictly shorter than ``bound``."""
    return sum(size**k for k in range(bound))


def vec_tree(items) -> Con:
    """A vector: each cons records its predecessor index and a refl proof."""
    t = Con(Pair(Z, Pair(REFL, UNIT)))
    for k, a in enumerate(reversed(list(items))):
        t = Con(Pair(S, Pair(num(k), Pair(REFL, Pair(Label(a), t)))))
    return t


# binary trees as ``ListD . SquareD``: a leaf, or a labelled node with two children


def leaf() -> Con:
    return Con(Pair(Z, UNIT))


def node(a: str, left: Con, right: Con) -> Con:
    return Con(Pair(S, Pair(Label(a), tuple_value([left, right]))))


def bintrees(alphabet, depth: int) -> list[Con]:
    """Binary trees with at most ``depth`` nested constructors."""
    if depth <= 0:
        return []
    smaller = bintrees(alphabet, depth - 1)
    return [leaf()] + [node(a, l, r) for a in alphabet for l in smaller for r in smaller]


def height_indexed(t: Con, k: int) -> bool:
    """Does ``t`` inhabit ``Vec . Height`` at ``k``?

    A leaf sits at 0; a node at ``m + 1`` has its left child at ``m`` and
    its right child at ``m`` or ``m + 1``.
    """
    tag, rest = t.payload.fst, t.payload.snd
    if tag == Z:
        return k == 0
    if k == 0:
        return False
    left, right = rest.snd.fst, rest.snd.snd.fst
    m = k - 1
    return height_indexed(left, m) and (height_indexed(right, m) or height_indexed(right, m + 1))


def container_count(shapes_and_positions, sizes) -> int:
    """Sum over shapes of the product of the sizes at each position's index."""
    return sum(math.prod(sizes[i] for i in positions) for positions in shapes_and_positions)
