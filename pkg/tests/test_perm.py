from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genrec.errors import DegreeMismatch, MalformedCycle, OutOfRange, RepeatedPoint
from genrec.permcore import Permutation, compose, inverse, parse_permutation


@st.composite
def perms(draw, degree=None):
    m = degree if degree is not None else draw(st.integers(1, 9))
    return Permutation(draw(st.permutations(range(m))))


@st.composite
def perm_pairs(draw, count=2):
    m = draw(st.integers(1, 9))
    return [Permutation(draw(st.permutations(range(m)))) for _ in range(count)]


def test_parse_identity():
    assert parse_permutation("()", 5).images == (0, 1, 2, 3, 4)
    assert parse_permutation("", 3).is_identity()


def test_parse_examples():
    assert parse_permutation("(1 2)", 2).images == (1, 0)
    assert parse_permutation("(1 2 3)(4 5)", 5).images == (1, 2, 0, 4, 3)


def test_parse_tolerates_whitespace_and_commas():
    assert parse_permutation("  ( 1,2 , 3 ) ( 4 5 )  ", 5).images == (1, 2, 0, 4, 3)


@pytest.mark.parametrize("text, err, column", [
    ("(1 2", MalformedCycle, None),
    ("1 2)", MalformedCycle, 1),
    ("(1 a)", MalformedCycle, 4),
    ("((1 2))", MalformedCycle, 2),
    ("(1 2)(2 3)", RepeatedPoint, 7),
    ("(1 1)", RepeatedPoint, 4),
    ("(1 9)", OutOfRange, 4),
    ("(0 1)", OutOfRange, 2),
])
def test_parse_errors(text, err, column):
    with pytest.raises(err) as info:
        parse_permutation(text, 5)
    if column is not None:
        assert info.value.column == column


def test_compose_is_left_to_right():
    p = parse_permutation("(1 2)", 3)
    r = parse_permutation("(2 3)", 3)
    pr = compose(p, r)
    # x -> r(p(x)): 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
    assert pr == parse_permutation("(1 3 2)", 3)
    assert pr.to_cycle_string() == "(1 3 2)"


def test_compose_against_sym3_table():
    # the Cayley table of Sym(3) computed from the definition (p*r)(x) = r(p(x))
    elements = [Permutation(t) for t in permutations(range(3))]
    for p in elements:
        for r in elements:
            expect = tuple(r.images[p.images[x]] for x in range(3))
            assert compose(p, r).images == expect
    table = {(p, r): compose(p, r) for p in elements for r in elements}
    for p in elements:
        assert sorted(table[(p, r)] for r in elements) == sorted(elements)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_bad_images_rejected():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@given(perms())
def test_inverse_law(p):
    ident = Permutation.identity(p.degree)
    assert compose(p, inverse(p)) == ident
    assert compose(inverse(p), p) == ident
    assert compose(ident, p) == p


@given(perm_pairs(3))
def test_associative(trio):
    a, b, c = trio
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(perms())
def test_cycle_string_round_trip(p):
    assert parse_permutation(p.to_cycle_string(), p.degree) == p


@given(perms(), st.integers(-5, 12))
def test_power_matches_repeated_product(p, k):
    expect = Permutation.identity(p.degree)
    step = p if k >= 0 else inverse(p)
    for _ in range(abs(k)):
        expect = compose(expect, step)
    assert p ** k == expect
