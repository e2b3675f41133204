import pytest
from hypothesis import given
from strategies import functions, sets

from ornengine.errors import DomainError, UnresolvedName
from ornengine.finset import (
    REFL,
    UNIT,
    Con,
    Enum,
    Eq,
    FinFn,
    InL,
    InR,
    InvImg,
    InvWit,
    Label,
    Lit,
    Named,
    Pair,
    Prod,
    Sum,
    apply_fn,
    compose_fn,
    const_fn,
    contains,
    depth,
    enumerate_set,
    identity_fn,
    inverse_image,
    iter_sizes,
    nat,
    num,
    num_of,
    size,
    suc,
    tuple_items,
    tuple_value,
    validate_fn,
)

a, b, c = Label("a"), Label("b"), Label("c")
AB = Enum(("a", "b"))


def test_enum_keeps_declaration_order():
    assert enumerate_set(Enum(("c", "a", "b"))) == (c, a, b)


def test_sum_lists_left_before_right():
    assert enumerate_set(Sum(AB, Enum(("c",)))) == (InL(a), InL(b), InR(c))


def test_prod_is_lexicographic():
    assert enumerate_set(Prod(AB, AB)) == (Pair(a, a), Pair(a, b), Pair(b, a), Pair(b, b))


def test_eq_is_refl_or_empty():
    assert enumerate_set(Eq(num(1), suc(num(0)))) == (REFL,)
    assert enumerate_set(Eq(num(1), num(2))) == ()


def test_inverse_image_in_domain_order():
    f = FinFn.tabulate(nat(4), AB, lambda k: a if num_of(k) % 2 == 0 else b)
    assert enumerate_set(inverse_image(f, a)) == (InvWit(num(0)), InvWit(num(2)))
    with pytest.raises(DomainError):
        inverse_image(f, c)


def test_named_sets_resolve_through_the_environment():
    env = {"A": AB, "B": Named("A")}
    assert enumerate_set(Prod(Named("B"), Named("A")), env) == enumerate_set(Prod(AB, AB))
    with pytest.raises(UnresolvedName):
        enumerate_set(Named("C"), env)
    assert contains(Named("A"), b, env)


def test_numerals_print_as_num():
    assert str(num(3)) == "(num 3)"
    assert str(Pair(a, Con(UNIT))) == "(pair a (con unit))"


def test_tuples_are_right_nested_pairs():
    v = tuple_value([a, b, c])
    assert v == Pair(a, Pair(b, Pair(c, UNIT)))
    assert tuple_items(v) == [a, b, c]
    with pytest.raises(DomainError):
        tuple_items(Pair(a, b))


def test_depth_counts_constructors():
    assert depth(a) == 0
    assert depth(Con(Pair(a, Con(UNIT)))) == 2


def test_literal_sets_drop_duplicates():
    assert enumerate_set(Lit((a, b, a))) == (a, b)


@given(sets(), sets())
def test_sum_and_product_sizes(s, t):
    assert size(Sum(s, t)) == size(s) + size(t)
    assert size(Prod(s, t)) == size(s) * size(t)


@given(sets())
def test_enumeration_has_no_duplicates_and_matches_contains(s):
    values = enumerate_set(s)
    assert len(set(values)) == len(values)
    assert all(contains(s, v) for v in values)


@given(functions())
def test_fibres_partition_the_domain(f):
    fibres = [enumerate_set(InvImg(f, t)) for t in enumerate_set(f.cod)]
    assert sum(len(x) for x in fibres) == size(f.dom)
    assert sorted((w.value for x in fibres for w in x), key=str) == sorted(enumerate_set(f.dom), key=str)


@given(functions())
def test_identity_and_composition_laws(f):
    assert compose_fn(identity_fn(f.cod), f) == f
    assert compose_fn(f, identity_fn(f.dom)) == f
    assert validate_fn(f) == []


def test_function_equality_is_extensional():
    f = FinFn(AB, AB, ((a, b), (b, a)))
    g = FinFn(AB, AB, ((b, a), (a, b)))
    assert f == g and hash(f) == hash(g)


def test_validate_fn_reports_problems():
    bad = FinFn(AB, Enum(("a",)), ((a, a), (c, a)))
    problems = validate_fn(bad)
    assert any("missing b" in p for p in problems)
    assert any("outside the domain" in p for p in problems)
    assert validate_fn(FinFn(AB, Enum(("a",)), ((a, b), (b, a)))) == ["function image b of a is outside the codomain"]


def test_apply_outside_domain():
    with pytest.raises(DomainError):
        apply_fn(const_fn(AB, AB, a), c)


def test_iter_sizes_covers_every_size_combination():
    families = list(iter_sizes(nat(2), 2))
    assert len(families) == 9
    assert sorted(tuple(n for _, n in f.counts()) for f in families) == sorted(
        (i, j) for i in range(3) for j in range(3)
    )
