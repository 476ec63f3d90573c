"""Order axioms and leading-term extraction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablediv import (
    Ambient,
    MonomialOrder,
    OrderSpecError,
    Polynomial,
    ZeroPolynomialError,
    dominance_order,
    graded_lex,
    leading_term,
    parse_order_spec,
    parse_polynomial,
    pure_lex,
)

from conftest import exponents


def test_grlex_degree_then_lex(amb_xy):
    order = graded_lex(amb_xy)  # x > y
    assert order.compare((2, 0), (1, 1)) == 1  # x^2 > xy
    assert order.compare((1, 0), (1, 0)) == 0
    assert order.compare((1, 1), (3, 0)) == -1  # degree wins


def test_pure_lex_priority(amb_wxy):
    order = parse_order_spec("lex:w>x>y", amb_wxy)
    # wy vs x^2: w beats x regardless of degree comparisons
    assert order.compare((1, 0, 1), (0, 2, 0)) == 1


def test_leading_terms(amb_xy, amb_wxy):
    order = graded_lex(amb_xy)
    lt = leading_term(parse_polynomial("x^2 + 2*x*y", amb_xy), order)
    assert lt.index == (2, 0)

    lexw = parse_order_spec("lex:w>x>y", amb_wxy)
    lt2 = leading_term(parse_polynomial("w*y + x^2", amb_wxy), lexw)
    assert lt2.index == (1, 0, 1)  # wy

    grx = parse_order_spec("grlex:x>w>y", amb_wxy)
    lt3 = leading_term(parse_polynomial("x^2 + w*y", amb_wxy), grx)
    assert lt3.index == (0, 2, 0)  # x^2


def test_leading_term_zero_rejected(amb_xy):
    with pytest.raises(ZeroPolynomialError):
        leading_term(Polynomial.zero(amb_xy), graded_lex(amb_xy))


def test_vector_tie_breaks_to_lowest_channel():
    amb = Ambient(("x", "y"), r=3)
    p = Polynomial(amb, {((2, 0), 2): 1, ((2, 0), 1): 5, ((1, 1), 0): 9})
    lt = leading_term(p, graded_lex(amb))
    assert (lt.index, lt.channel) == ((2, 0), 1)


def test_order_spec_roundtrip(amb_wxy):
    order = parse_order_spec("grlex:x>w>y", amb_wxy)
    assert order.spec(amb_wxy) == "grlex:x>w>y"
    with pytest.raises(OrderSpecError):
        parse_order_spec("weighted:x>y", amb_wxy)
    with pytest.raises(OrderSpecError):
        parse_order_spec("lex:x>y", amb_wxy)  # missing w


def test_dominance_order_puts_last_variable_first(amb_wxy):
    order = dominance_order(amb_wxy)
    assert order.compare((0, 0, 1), (5, 5, 0)) == 1  # y beats anything without y


@st.composite
def order_and_indices(draw, count):
    d = draw(st.integers(min_value=1, max_value=3))
    kind = draw(st.sampled_from(["grlex", "lex"]))
    priority = draw(st.permutations(range(d)))
    order = MonomialOrder(kind, tuple(priority))
    idx = [draw(exponents(d)) for _ in range(count)]
    return order, idx


@given(order_and_indices(3))
@settings(max_examples=80)
def test_total_order_axioms(case):
    order, (a, b, c) = case
    # totality and antisymmetry
    assert order.compare(a, b) == -order.compare(b, a)
    assert (order.compare(a, b) == 0) == (a == b)
    # transitivity
    if order.compare(a, b) >= 0 and order.compare(b, c) >= 0:
        assert order.compare(a, c) >= 0


@given(order_and_indices(3))
@settings(max_examples=80)
def test_multiplicative(case):
    order, (a, b, gamma) = case
    shifted = tuple(x + g for x, g in zip(a, gamma)), tuple(x + g for x, g in zip(b, gamma))
    assert order.compare(a, b) == order.compare(*shifted)


@given(order_and_indices(2))
@settings(max_examples=80)
def test_grlex_refines_degree(case):
    order, (a, b) = case
    if order.kind != "grlex":
        return
    if sum(a) < sum(b):
        assert order.compare(a, b) == -1
