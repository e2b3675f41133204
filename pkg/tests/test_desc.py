import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import list_tree, lists_upto, nat_tree
from strategies import descriptions, families, functions

from ornengine.corpus import A2, STAR, STAR_IDX, list_desc, nat_desc, square_desc
from ornengine.desc import (
    ONE,
    DescFam,
    Sigma,
    Var,
    adjoint_desc,
    check_desc,
    cobase_change,
    compose_desc,
    constant_algebra,
    fold,
    infer_index,
    interp_desc,
    length_algebra,
    mu_enumerate,
    mu_levels,
    validate_algebra,
    validate_desc,
    well_indexed,
)
from ornengine.errors import CarrierOverflow, IndexMismatch, ValidationError
from ornengine.finset import UNIT, Enum, Family, Label, const_fn, enumerate_set, nat, num, size


def sizes(fam: Family) -> dict:
    return dict(fam.counts())


@pytest.mark.parametrize("k", range(4))
def test_nat_and_list_interpretations(k):
    x = Family.const(STAR_IDX, nat(k))
    assert sizes(interp_desc(nat_desc(), x)) == {STAR: 1 + k}
    assert sizes(interp_desc(list_desc(), x)) == {STAR: 1 + 2 * k}


def test_naturals_enumerate_in_order():
    assert mu_enumerate(nat_desc(), STAR, 4) == tuple(nat_tree(k) for k in range(4))


def test_lists_enumerate_shortest_first():
    trees = mu_enumerate(list_desc(), STAR, 4)
    assert set(trees) == {list_tree(xs) for xs in lists_upto("ab", 3)}
    assert [len(trees[:n]) for n in (1, 3, 7, 15)] == [1, 3, 7, 15]
    assert mu_enumerate(list_desc(), STAR, 2) == trees[:3]


def test_binary_trees_have_no_leaves_without_a_base_case():
    assert mu_enumerate(square_desc(), STAR, 5) == ()


@given(descriptions(), st.integers(0, 3))
def test_enumeration_at_a_depth_is_a_prefix_of_the_next(d, n):
    for j in enumerate_set(d.out_idx):
        smaller, larger = mu_enumerate(d, j, n), mu_enumerate(d, j, n + 1)
        assert larger[: len(smaller)] == smaller
        assert len(set(larger)) == len(larger)
        assert all(well_indexed(d, j, t) for t in larger)


def test_infer_index_and_well_indexed():
    t = list_tree("ab")
    assert infer_index(list_desc(), t) == STAR
    assert not well_indexed(nat_desc(), STAR, t)
    with pytest.raises(IndexMismatch):
        infer_index(nat_desc(), t)


def test_length_algebra_folds_lists_to_their_length():
    alg = length_algebra(list_desc(), 4)
    assert validate_algebra(alg) == []
    for xs in lists_upto("ab", 3):
        assert fold(alg, list_tree(xs), STAR) == num(len(xs))
    with pytest.raises(CarrierOverflow):
        fold(alg, list_tree("abab"), STAR)


def test_constant_algebra_is_total():
    alg = constant_algebra(list_desc())
    assert all(fold(alg, t, STAR) == UNIT for t in mu_enumerate(list_desc(), STAR, 3))


def test_validation_names_the_missing_branch():
    d = DescFam(STAR_IDX, STAR_IDX, ((STAR, Sigma(A2, ((Label("a"), ONE),))),))
    assert validate_desc(d) == ["star: missing branch for b"]
    with pytest.raises(ValidationError):
        check_desc(d)
    bad_var = DescFam(STAR_IDX, STAR_IDX, ((STAR, Var(Label("elsewhere"))),))
    assert "not an input index" in validate_desc(bad_var)[0]


@given(functions(), st.data())
def test_adjoint_counts(f, data):
    x = data.draw(families(f.dom))
    y = data.draw(families(f.cod))
    ex = sizes(interp_desc(adjoint_desc("exists", f), x))
    fa = sizes(interp_desc(adjoint_desc("forall", f), x))
    re = sizes(interp_desc(adjoint_desc("reindex", f), y))
    for t in enumerate_set(f.cod):
        fibre = [a for a in enumerate_set(f.dom) if f(a) == t]
        assert ex[t] == sum(size(x(a)) for a in fibre)
        assert fa[t] == math.prod(size(x(a)) for a in fibre)
    for a in enumerate_set(f.dom):
        assert re[a] == size(y(f(a)))


@given(descriptions(), st.data())
def test_composition_interprets_as_composite(d, data):
    x = data.draw(families(d.in_idx))
    inner = interp_desc(d, x)
    assert sizes(interp_desc(compose_desc(d, d), x)) == sizes(interp_desc(d, inner))


@given(descriptions(), st.data())
def test_cobase_change_sums_over_fibres(d, data):
    u = data.draw(functions(d.in_idx, nat(2)))
    v = data.draw(functions(d.out_idx, nat(2)))
    y = data.draw(families(u.cod))
    pushed = sizes(interp_desc(cobase_change(d, u, v), y))
    pulled = sizes(interp_desc(d, Family.tabulate(d.in_idx, lambda i: y(u(i)))))
    for l in enumerate_set(v.cod):
        assert pushed[l] == sum(pulled[j] for j in enumerate_set(d.out_idx) if v(j) == l)


def test_levels_need_an_endo_description():
    d = adjoint_desc("exists", const_fn(nat(2), Enum(("only",)), Label("only")))
    with pytest.raises(IndexMismatch):
        mu_levels(d, 2)
