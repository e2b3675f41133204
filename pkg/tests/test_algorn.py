import pytest
from oracles import list_tree, lists_upto

from ornengine.algorn import algebraic_ornament, check_coherence, recompute, remember
from ornengine.container import check_cartesian
from ornengine.corpus import STAR, list_desc, nat_desc
from ornengine.desc import constant_algebra, length_algebra, mu_enumerate
from ornengine.errors import IndexMismatch
from ornengine.finset import REFL, UNIT, Pair, num
from ornengine.ornament import forget, interp_orn, orn_to_cart, validate_orn

LENGTH = length_algebra(list_desc(), 4)


def test_indices_are_pairs_over_the_carrier():
    r = algebraic_ornament(LENGTH)
    assert validate_orn(r.ornament) == []
    assert r.ornament.base == list_desc()
    assert [ix.snd for ix in r.pairs.values] == [num(k) for k in range(4)]
    assert check_cartesian(orn_to_cart(r.ornament)).ok


@pytest.mark.parametrize("n", range(4))
def test_lists_indexed_by_length_are_lists_of_that_length(n):
    d = interp_orn(algebraic_ornament(LENGTH).ornament)
    ix = Pair(STAR, num(n))
    trees = mu_enumerate(d, ix, 5)
    assert len(trees) == 2**n
    forgotten = {forget(algebraic_ornament(LENGTH).ornament, t, ix) for t in trees}
    assert forgotten == {list_tree(xs) for xs in lists_upto("ab", n) if len(xs) == n}


@pytest.mark.parametrize("n", range(4))
def test_coherence_at_each_length(n):
    report = check_coherence(LENGTH, STAR, num(n), 5)
    assert report.ok, report.violations
    assert report.stats == {"lhs": 2**n, "rhs": 2**n}


def test_remember_then_recompute():
    for xs in lists_upto("ab", 3):
        t = list_tree(xs)
        lifted, ix = remember(LENGTH, t, STAR)
        assert ix == Pair(STAR, num(len(xs)))
        assert recompute(LENGTH, lifted, ix) == (t, REFL)


def test_recompute_rejects_a_wrong_index():
    lifted, _ = remember(LENGTH, list_tree("a"), STAR)
    with pytest.raises(IndexMismatch):
        recompute(LENGTH, lifted, Pair(STAR, num(2)))
    with pytest.raises(IndexMismatch):
        recompute(LENGTH, list_tree("a"), Pair(STAR, num(1)))


def test_the_unit_algebra_gives_back_the_datatype():
    alg = constant_algebra(list_desc())
    report = check_coherence(alg, STAR, UNIT, 3)
    assert report.ok
    assert report.stats["lhs"] == len(mu_enumerate(list_desc(), STAR, 3)) == 7


def test_algebraic_ornament_of_naturals_by_length():
    alg = length_algebra(nat_desc(), 3)
    for n in range(3):
        assert check_coherence(alg, STAR, num(n), 4).stats == {"lhs": 1, "rhs": 1}
