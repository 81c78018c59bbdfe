"""Truncated-series ring laws, inverses, and convention plumbing."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonflow.errors import ConventionMismatch, PreconditionError
from bosonflow.series import Convention, TruncSeries

ORDER = 6

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


def series_strategy(conv=Convention.OGF, order=ORDER):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(
        lambda cs: TruncSeries(conv, cs)
    )


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=60, deadline=None)
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(series_strategy(Convention.EGF))
@settings(max_examples=40, deadline=None)
def test_add_sub_cancel(f):
    z = TruncSeries.zero(Convention.EGF, ORDER)
    assert f - f == z
    assert f + z == f


def test_convention_mixing_rejected():
    f = TruncSeries.one(Convention.OGF, 4)
    g = TruncSeries.one(Convention.EGF, 4)
    with pytest.raises(ConventionMismatch):
        f + g
    with pytest.raises(ConventionMismatch):
        f * TruncSeries.one(Convention.OGF, 5)


def test_raw_displayed_correspondence():
    # the underlying function does not depend on the convention
    raw = [Fraction(1), Fraction(1, 2), Fraction(2), Fraction(-1, 3)]
    for conv in Convention:
        f = TruncSeries.from_raw(conv, raw)
        assert f.raw_list() == raw
        assert f.coeff(2) == Fraction(2) * conv.denominator(2)


def test_convention_conversion_round_trip():
    f = TruncSeries(Convention.EGF, [1, 1, 3, -2, 5])
    assert f.convert(Convention.OGF).convert(Convention.EGF) == f
    assert f.convert(Convention.DEGF).raw_list() == f.raw_list()


def test_geometric_series_inverse():
    one_minus_x = TruncSeries(Convention.OGF, [1, -1] + [0] * (ORDER - 1))
    geo = one_minus_x.inverse()
    assert geo.raw_list() == [Fraction(1)] * (ORDER + 1)
    assert geo * one_minus_x == TruncSeries.one(Convention.OGF, ORDER)


@given(series_strategy())
@settings(max_examples=40, deadline=None)
def test_inverse_when_unit(f):
    if not f.raw(0):
        with pytest.raises(PreconditionError):
            f.inverse()
        return
    assert f * f.inverse() == TruncSeries.one(Convention.OGF, ORDER)


def test_exp_log_known_values():
    x = TruncSeries.x(Convention.EGF, ORDER)
    e = x.exp()
    assert e.coeffs == (1,) * (ORDER + 1)  # EGF displayed e^x
    assert e.log() == x


@given(series_strategy())
@settings(max_examples=40, deadline=None)
def test_exp_log_round_trip(f):
    f = f - TruncSeries(Convention.OGF, [f.coeff(0)] + [0] * ORDER)
    assert f.exp().log() == f


@given(series_strategy(), series_strategy())
@settings(max_examples=30, deadline=None)
def test_exp_is_a_homomorphism(f, g):
    f = f - TruncSeries(Convention.OGF, [f.coeff(0)] + [0] * ORDER)
    g = g - TruncSeries(Convention.OGF, [g.coeff(0)] + [0] * ORDER)
    assert (f + g).exp() == f.exp() * g.exp()


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=30, deadline=None)
def test_compose_associativity(f, g, h):
    kill = lambda s: s - TruncSeries(Convention.OGF, [s.coeff(0)] + [0] * ORDER)
    g, h = kill(g), kill(h)
    assert f.compose(g).compose(h) == f.compose(g.compose(h))


def test_compose_needs_zero_constant():
    f = TruncSeries.one(Convention.OGF, 4)
    with pytest.raises(PreconditionError):
        f.compose(f)


def test_reversion_round_trip():
    # phi = x e^x reverts to the tree function's compositional inverse
    phi = TruncSeries.from_raw(
        Convention.OGF,
        [Fraction(0)] + [Fraction(1, factorial(n - 1)) for n in range(1, ORDER + 1)],
    )
    rev = phi.reversion()
    x = TruncSeries.x(Convention.OGF, ORDER)
    assert phi.compose(rev) == x
    assert rev.compose(phi) == x


def test_pow_fraction_square_root():
    f = TruncSeries(Convention.OGF, [1, 2, 1] + [0] * (ORDER - 2))  # (1+x)^2
    root = f.pow_fraction(Fraction(1, 2))
    assert root == TruncSeries(Convention.OGF, [1, 1] + [0] * (ORDER - 1))
    g = TruncSeries(Convention.OGF, [1, 1, 1, 1, 1, 1, 1])
    assert g.pow_fraction(Fraction(1, 3)).pow_int(3) == g


def test_divide_shifts_valuation():
    num = TruncSeries(Convention.OGF, [0, 0, 1, 1, 0, 0, 0])  # x^2 (1+x)
    den = TruncSeries(Convention.OGF, [0, 1, 0, 0, 0, 0, 0])  # x
    q = num.divide(den)
    assert q.order == ORDER - 1
    assert q.coeffs == (0, 1, 1, 0, 0, 0)
