"""Shared strategies and helpers for the test suite."""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from stablediv import Ambient, Polynomial


def small_fractions(max_num=6, max_den=4):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def exponents(d, max_degree=4):
    return st.lists(
        st.integers(min_value=0, max_value=max_degree), min_size=d, max_size=d
    ).map(tuple)


def polynomials(ambient: Ambient, max_degree=4, max_terms=5, coeffs=None):
    """Exact-domain polynomials over a fixed ambient."""
    if coeffs is None:
        coeffs = small_fractions()
    term = st.tuples(exponents(ambient.d, max_degree), st.integers(0, ambient.r - 1), coeffs)
    def build(terms):
        acc = {}
        for alpha, channel, c in terms:
            key = (alpha, channel)
            acc[key] = acc.get(key, Fraction(0)) + c
        return Polynomial(ambient, acc)
    return st.lists(term, min_size=0, max_size=max_terms).map(build)


def nonzero_polynomials(ambient: Ambient, **kw):
    return polynomials(ambient, **kw).filter(lambda p: not p.is_zero())


@pytest.fixture
def amb_xy():
    return Ambient(("x", "y"))


@pytest.fixture
def amb_wxy():
    return Ambient(("w", "x", "y"))
