"""Normal ordering: rewriting oracle, representation, triangle laws."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonflow import boson
from bosonflow.errors import ParseError

words = st.lists(
    st.sampled_from([boson.CREATE, boson.ANNIHILATE]), min_size=0, max_size=6
).map(lambda ls: boson.BosonWord(ls))


@given(words)
@settings(max_examples=80, deadline=None)
def test_fast_normalization_matches_string_rewriting(w):
    assert boson.normalize(w) == boson.normalize_slow(w)


@given(words, words)
@settings(max_examples=60, deadline=None)
def test_normalization_is_a_homomorphism(u, v):
    assert boson.normalize(u * v) == boson.normalize(u) * boson.normalize(v)


def test_commutator():
    aad = boson.normalize(boson.BosonWord((boson.ANNIHILATE, boson.CREATE)))
    assert aad.coeff(0, 0) == 1
    assert aad.coeff(1, 1) == 1
    assert len(aad.terms) == 2


@given(words)
@settings(max_examples=40, deadline=None)
def test_representation_is_faithful_on_small_matrices(w):
    # a+ -> x, a -> d/dx on monomials: the word and its normal form agree
    n = len(w) + 2
    direct = boson.NormalForm.identity()
    for letter in w.letters:
        step = boson.NormalForm.monomial(*((1, 0) if letter == boson.CREATE else (0, 1)))
        direct = direct * step
    assert direct.apply_to_monomials(n) == boson.normalize(w).apply_to_monomials(n)


def test_apply_to_monomials_entries():
    # x d/dx sends x^m to m x^m
    nf = boson.normalize(boson.BosonWord.parse("a+ a"))
    m = nf.apply_to_monomials(4)
    assert [m.entry(k, k) for k in range(5)] == [0, 1, 2, 3, 4]
    # d/dx sits above the diagonal
    d = boson.NormalForm.monomial(0, 1).apply_to_monomials(3)
    assert d.entry(0, 1) == 1 and d.entry(1, 2) == 2 and d.entry(2, 3) == 3


def test_stirling_recurrence_second_kind():
    sm = boson.stirling_matrix(boson.BosonWord.parse("a+ a"), 8)
    for n in range(8):
        for k in range(1, n + 2):
            assert sm.entry(n + 1, k) == k * sm.entry(n, k) + sm.entry(n, k - 1)


def test_zero_excess_triangle():
    # w = a a+: (a a+)^2 = (a+)^2 a^2 + 3 a+ a + 1
    sm = boson.stirling_matrix(boson.BosonWord.parse("a a+"), 4)
    assert list(sm.rows[0]) == [1]
    assert list(sm.rows[1]) == [1, 1]
    assert list(sm.rows[2]) == [1, 3, 1]
    nf = boson.normalize_slow(boson.BosonWord.parse("(a a+)^2"))
    assert nf.coeff(0, 0) == 1 and nf.coeff(1, 1) == 3 and nf.coeff(2, 2) == 1


def test_negative_excess_triangle():
    # w = a a a+ has excess -1; rows are indexed by the creation count
    # after the trailing annihilators are factored to the right:
    # N(w) = (a+ a + 2) a
    sm = boson.stirling_matrix(boson.BosonWord.parse("a a a+"), 3)
    assert list(sm.rows[0]) == [1]
    assert list(sm.rows[1]) == [2, 1]
    nf = boson.normalize_slow(boson.BosonWord.parse("a a a+"))
    assert nf.coeff(0, 1) == 2 and nf.coeff(1, 2) == 1


def test_normalize_power_matches_repeated_product():
    w = boson.BosonWord.parse("a+ a a a+")
    assert boson.normalize_power(w, 3) == boson.normalize(w * w * w)


@pytest.mark.parametrize(
    "text,letters",
    [
        ("a", ("a",)),
        ("a+ a", ("a+", "a")),
        ("a+a", ("a+", "a")),
        ("(a+)^2 a", ("a+", "a+", "a")),
        ("((a+) a)^2", ("a+", "a", "a+", "a")),
        ("a^3", ("a", "a", "a")),
    ],
)
def test_word_grammar(text, letters):
    assert boson.BosonWord.parse(text).letters == letters


@pytest.mark.parametrize("text", ["", "b", "(a+ a", "a+^", "a ^ -2", "a+)"])
def test_word_grammar_rejects(text):
    with pytest.raises(ParseError):
        boson.BosonWord.parse(text)


def test_parse_error_carries_offset():
    with pytest.raises(ParseError) as exc:
        boson.BosonWord.parse("a+ b a")
    assert exc.value.position == 3


def test_staircase_seed_stability():
    # the triangle of any word is reproducible and integer-valued
    rng = random.Random(7)
    for _ in range(10):
        w = boson.BosonWord(
            [rng.choice((boson.CREATE, boson.ANNIHILATE)) for _ in range(rng.randint(1, 5))]
        )
        sm = boson.stirling_matrix(w, 3)
        again = boson.stirling_matrix(w, 3)
        assert sm.rows == again.rows
        for row in sm.rows:
            for c in row:
                assert Fraction(c).denominator == 1
