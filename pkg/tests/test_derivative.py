import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import codes, families

from ornengine.container import check_cartesian, desc_to_container, interp_container
from ornengine.corpus import A2, STAR, STAR_IDX, balanced_orn, fin_desc, list_desc, list_orn, nat_desc, vec_orn
from ornengine.derivative import check_plug, contexts, derive_container, derive_orn, plug
from ornengine.desc import ONE, DescFam, Pi, Sigma, Var
from ornengine.errors import DomainError, IndexMismatch
from ornengine.finset import Enum, Family, Label, enumerate_set, nat, num, size
from ornengine.ornament import orn_to_cart

P, Q = Label("p"), Label("q")
PQ = Enum(("p", "q"))


def single(code, index) -> DescFam:
    return DescFam(index, STAR_IDX, ((STAR, code),))


def hole_count(code, index, i, x) -> int:
    c = derive_container(desc_to_container(single(code, index)), i)
    return size(interp_container(c, x)(STAR))


def full_count(code, index, x) -> int:
    return size(interp_container(desc_to_container(single(code, index)), x)(STAR))


@given(st.data())
def test_leibniz_and_sum_rules(data):
    index = nat(data.draw(st.integers(1, 2)))
    a, b = data.draw(codes(index, 1)), data.draw(codes(index, 1))
    x = data.draw(families(index))
    i = data.draw(st.sampled_from(enumerate_set(index)))
    product = Pi(PQ, ((P, a), (Q, b)))
    coproduct = Sigma(PQ, ((P, a), (Q, b)))
    da, db = hole_count(a, index, i, x), hole_count(b, index, i, x)
    fa, fb = full_count(a, index, x), full_count(b, index, x)
    assert hole_count(product, index, i, x) == da * fb + fa * db
    assert hole_count(coproduct, index, i, x) == da + db


def test_list_contexts():
    c = desc_to_container(list_desc())
    d = derive_container(c, STAR)
    # a one-layer list has a hole only in the tail of a cons, one per element
    assert size(interp_container(d, Family.const(STAR_IDX, A2))(STAR)) == 2
    x = Family.const(STAR_IDX, Enum(("x", "y")))
    ctx = next(contexts(c, STAR, x, STAR))
    assert plug(ctx, x, Label("y")).snd.fst == Label("y")
    with pytest.raises(IndexMismatch):
        plug(ctx, x, Label("nope"))


@pytest.mark.parametrize(
    "d, i, sizes",
    [
        (list_desc(), STAR, (2,)),
        (nat_desc(), STAR, (3,)),
        (fin_desc(4), num(2), (1, 2, 2, 0)),
    ],
)
def test_plug_is_a_bijection(d, i, sizes):
    c = desc_to_container(d)
    x = Family(d.in_idx, tuple((j, nat(n)) for j, n in zip(enumerate_set(d.in_idx), sizes)))
    report = check_plug(c, i, x)
    assert report.ok, report.violations
    assert report.stats["lhs"] == report.stats["rhs"]


def test_derivative_outside_the_index_set():
    with pytest.raises(DomainError):
        derive_container(desc_to_container(list_desc()), Label("elsewhere"))


@pytest.mark.parametrize("k", range(3))
def test_derived_ornaments_are_cartesian(k):
    for m in (orn_to_cart(vec_orn(3)), orn_to_cart(balanced_orn(3))):
        report = check_cartesian(derive_orn(m, num(k)))
        assert report.ok, report.violations
    assert check_cartesian(derive_orn(orn_to_cart(list_orn()), STAR)).ok


def test_derived_ornament_keeps_the_hole():
    m = orn_to_cart(vec_orn(3))
    dm = derive_orn(m, num(0))
    for j, sh in dm.src.shape_keys():
        assert dm.sigma(j, sh).snd == sh.snd


def test_empty_input_index_has_nothing_to_differentiate():
    empty = Enum(())
    d = DescFam(empty, STAR_IDX, ((STAR, Sigma(PQ, ((P, ONE), (Q, ONE)))),))
    c = desc_to_container(d)
    assert size(interp_container(c, Family(empty, ()))(STAR)) == 2
    with pytest.raises(DomainError):
        derive_container(c, Label("anything"))


def test_differentiating_at_an_index_with_no_positions_gives_no_shapes():
    d = DescFam(nat(2), STAR_IDX, ((STAR, Sigma(PQ, ((P, ONE), (Q, Var(num(0)))))),))
    c = desc_to_container(d)
    assert derive_container(c, num(1)).shapes(STAR) == ()
    x = Family.const(nat(2), nat(2))
    report = check_plug(c, num(1), x)
    assert report.ok and report.stats == {"lhs": 0, "rhs": 0}
