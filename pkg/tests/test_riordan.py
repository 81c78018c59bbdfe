"""Riordan pairs: build/recover round trip, column law, composition."""

import random
from fractions import Fraction
from math import factorial

import pytest

from bosonflow import riordan, triangular
from bosonflow.errors import ConventionMismatch, PreconditionError
from bosonflow.riordan import RiordanPair
from bosonflow.series import Convention, TruncSeries

ORDER = 6


def random_pair(rng, conv=Convention.EGF, order=ORDER, unipotent=False):
    g0 = Fraction(1) if unipotent else Fraction(rng.randint(1, 4))
    phi1 = conv.denominator(1) if unipotent else rng.randint(1, 3) * conv.denominator(1)
    g = TruncSeries(conv, [g0] + [Fraction(rng.randint(-3, 3)) for _ in range(order)])
    phi = TruncSeries(
        conv, [0, phi1] + [Fraction(rng.randint(-3, 3)) for _ in range(order - 1)]
    )
    return RiordanPair(g, phi)


def test_pascal_triangle():
    # (1/(1-x), x/(1-x)) in OGF is Pascal's triangle
    geo = TruncSeries(Convention.OGF, [1] * (ORDER + 1))
    phi = TruncSeries(Convention.OGF, [0] + [1] * ORDER)
    m = riordan.riordan_matrix(RiordanPair(geo, phi), ORDER)
    for n in range(ORDER + 1):
        for k in range(n + 1):
            binom = Fraction(factorial(n), factorial(k) * factorial(n - k))
            assert m.entry(n, k) == binom


def test_build_recover_round_trip():
    rng = random.Random(11)
    for conv in (Convention.OGF, Convention.EGF):
        for _ in range(8):
            pair = random_pair(rng, conv)
            m = riordan.riordan_matrix(pair, ORDER)
            assert riordan.recover_pair(m, conv) == pair


def test_recover_rejects_degenerate_matrix():
    m = triangular.TriMatrix.zero(4)
    with pytest.raises(PreconditionError):
        riordan.recover_pair(m, Convention.OGF)


def test_sheffer_accepts_riordan_and_rejects_others():
    rng = random.Random(12)
    pair = random_pair(rng)
    m = riordan.riordan_matrix(pair, ORDER)
    assert riordan.is_sheffer(m, Convention.EGF).ok
    rows = [list(r) for r in m.rows]
    rows[4][2] += 1
    broken = riordan.is_sheffer(triangular.TriMatrix(rows), Convention.EGF)
    assert not broken.ok
    assert broken.witness is not None


def test_compose_matches_matrix_product():
    rng = random.Random(13)
    for _ in range(6):
        p, q = random_pair(rng), random_pair(rng)
        lhs = riordan.riordan_matrix(riordan.riordan_compose(p, q), ORDER)
        rhs = riordan.riordan_matrix(p, ORDER) * riordan.riordan_matrix(q, ORDER)
        assert lhs == rhs


def test_compose_checks_conventions():
    rng = random.Random(14)
    with pytest.raises(ConventionMismatch):
        riordan.riordan_compose(
            random_pair(rng, Convention.OGF), random_pair(rng, Convention.EGF)
        )


def test_unipotence_criterion():
    rng = random.Random(15)
    uni = random_pair(rng, unipotent=True)
    assert uni.is_unipotent()
    assert riordan.riordan_matrix(uni, ORDER).is_unipotent()
    non = random_pair(rng)
    assert non.is_unipotent() == riordan.riordan_matrix(non, ORDER).is_unipotent()


def test_fractional_power_stays_sheffer():
    rng = random.Random(16)
    pair = random_pair(rng, unipotent=True)
    m = riordan.riordan_matrix(pair, ORDER)
    half = triangular.mat_power(m, Fraction(1, 2))
    result = riordan.is_sheffer(half, Convention.EGF)
    assert result.ok
    # the recovered pair squares back to the original matrix
    again = riordan.riordan_matrix(result.pair, ORDER)
    assert again * again == m


def test_bivariate_characteristic_series_matches_matrix():
    rng = random.Random(17)
    pair = random_pair(rng, Convention.EGF)
    m = riordan.riordan_matrix(pair, ORDER)
    grid = riordan.bivariate_char_series(pair, (ORDER, ORDER))
    for n in range(ORDER + 1):
        for k in range(ORDER + 1):
            assert grid.coeff(n, k) == (m.entry(n, k) if k <= n else 0)


def test_pair_json_round_trip():
    rng = random.Random(18)
    pair = random_pair(rng)
    data = riordan.pair_to_json(pair)
    assert data["convention"] == "EGF"
    assert riordan.pair_from_json(data) == pair
