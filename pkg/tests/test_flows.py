"""Flows of vector fields and the operator group actions they induce."""

from fractions import Fraction
from math import factorial

import pytest

from bosonflow import flows
from bosonflow.boxseries import BoxSeries
from bosonflow.errors import ParseError, PreconditionError
from bosonflow.flows import HomogeneousOperator
from bosonflow.series import Convention, TruncSeries

ORDERS = (6, 5)


def field(text):
    n_x, n_lam = ORDERS
    return flows.parse_field(text, n_x + n_lam)


def test_flow_tangent_is_the_field():
    for text in ("x^2", "1 + x^2", "2 + 3x^3", "x"):
        v = field(text)
        flow = flows.formal_flow(v, ORDERS)
        n_x = ORDERS[0]
        assert flow.tangent() == v.raw_list()[: n_x + 1]
        # lam = 0 gives the identity substitution
        assert [flow.coeff(n, 0) for n in range(n_x + 1)] == [0, 1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("r", [0, 1, 2, 3, 4])
def test_closed_forms_match_the_integrator(r):
    v = field("x^%d" % r if r != 1 else "x")
    assert flows.formal_flow(v, ORDERS).box == flows.substitution_factor_closed(r, ORDERS).box


def test_group_law_trivariate():
    for text in ("x^2", "1 + x^2"):
        v = flows.parse_field(text, 2 * (ORDERS[0] + ORDERS[1]))
        assert flows.flow_group_law_holds(v, (4, 3))


def test_flow_requires_enough_field_order():
    v = flows.parse_field("x^2", 3)
    with pytest.raises(PreconditionError):
        flows.formal_flow(v, (4, 4))


def test_group_action_pure_substitution():
    # e^{lam x^2 d/dx} x = x / (1 - lam x)
    op = HomogeneousOperator.single_word(2, 0)
    f = TruncSeries.x(Convention.OGF, sum(ORDERS))
    grid = flows.group_action(op, f, ORDERS)
    for n in range(ORDERS[0] + 1):
        for k in range(ORDERS[1] + 1):
            assert grid.coeff(n, k) == (1 if n == k + 1 else 0)


def test_group_action_prefactor():
    # a+ a a+ acts with one prefactor power: (s/x) f(s)
    op = HomogeneousOperator.single_word(2, 1)
    f = TruncSeries.one(Convention.OGF, sum(ORDERS))
    grid = flows.group_action(op, f, ORDERS)
    # (s/x) with s = x/(1-lam x) is 1/(1-lam x) = sum (lam x)^k
    for n in range(ORDERS[0] + 1):
        for k in range(ORDERS[1] + 1):
            assert grid.coeff(n, k) == (1 if n == k else 0)


def test_group_action_matches_conjugacy_route():
    # a+ a a+ is x (d/dx) x: two independent evaluation paths
    op = HomogeneousOperator.single_word(2, 1)
    order = sum(ORDERS) + 1  # the monomial prefactor x costs one x-order
    f = TruncSeries(Convention.OGF, [Fraction(1), Fraction(2), Fraction(0), Fraction(1)] + [Fraction(0)] * (order - 3))
    u = TruncSeries.x(Convention.OGF, order)
    assert flows.group_action(op, f, ORDERS) == flows.conjugacy_exp(u, u, f, ORDERS)


def test_conjugacy_exp_invertible_branch_against_oracle():
    # e^{lam (1 + x^2) d/dx} on monomials vs the matrix exponential
    u1 = flows.parse_field("1 + x^2", sum(ORDERS))
    one = TruncSeries.one(Convention.OGF, sum(ORDERS))
    from bosonflow import boson

    nf = boson.normalize(boson.BosonWord.parse("a")) + boson.normalize(
        boson.BosonWord.parse("(a+)^2 a")
    )
    for m in range(4):
        f = TruncSeries.monomial(Convention.OGF, sum(ORDERS), m)
        got = flows.conjugacy_exp(u1, one, f, ORDERS)
        expected = flows.operator_exp_grid(nf, m, ORDERS)
        assert got == expected


def test_operator_exp_grid_diagonal():
    # e^{lam x d/dx} x^m = e^{m lam} x^m
    op = HomogeneousOperator.single_word(1, 0)
    grid = flows.operator_exp_grid(op.normal_form(), 2, (4, 4))
    for k in range(5):
        assert grid.coeff(2, k) == Fraction(2**k, factorial(k))


def test_correspondence_for_substitution_operators():
    for text in ("a+ a", "(a+)^2 a", "a+ a a+"):
        op = flows.parse_operator(text)
        triangle, pair, report = flows.characteristic_correspondence(op, 6)
        assert report.ok, (text, report)
        assert pair.is_unipotent()


def test_correspondence_rejects_negative_excess():
    op = flows.parse_operator("a")
    with pytest.raises(PreconditionError):
        flows.characteristic_correspondence(op, 4)


def test_operator_parsing():
    op = flows.parse_operator("1/2 (a+)^2 a + a+ a a+")
    assert op.terms == {(2, 0): Fraction(1, 2), (1, 1): Fraction(1)}
    assert op.weight == 1
    with pytest.raises(ParseError):
        flows.parse_operator("(a+)^2 a + a")  # weights 1 and -1
    with pytest.raises(ParseError):
        flows.parse_operator("a a")  # two annihilators


def test_field_parsing():
    v = flows.parse_field("1 + 2x^3", 5)
    assert v.coeffs == (1, 0, 0, 2, 0, 0)
    with pytest.raises(ParseError):
        flows.parse_field("x^-1", 5)
