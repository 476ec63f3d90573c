"""The l1 and H2 norms and their exact identities."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from stablediv import (
    Ambient,
    GaussianRational,
    Polynomial,
    h2_inner,
    h2_norm_sq,
    l1_norm,
    monomial_h2_norm_sq,
    parse_polynomial,
)

from conftest import exponents, nonzero_polynomials, polynomials


def P(text, amb):
    return parse_polynomial(text, amb)


class TestL1:
    def test_direct(self, amb_xy):
        assert l1_norm(P("x^2 + 2*x*y", amb_xy)) == 3

    def test_zero(self, amb_xy):
        assert l1_norm(Polynomial.zero(amb_xy)) == 0

    def test_large_coefficient(self, amb_xy):
        for n in (3, 7, 11):
            p = Polynomial.monomial(amb_xy, (1, n - 1), Fraction((-2) ** n))
            assert l1_norm(p) == 2**n

    def test_gaussian_exact_when_one_part_zero(self, amb_xy):
        p = Polynomial.constant(amb_xy, GaussianRational(0, Fraction(-3, 2)))
        assert l1_norm(p) == Fraction(3, 2)
        assert isinstance(l1_norm(p), Fraction)

    def test_gaussian_float_fallback(self, amb_xy):
        p = Polynomial.constant(amb_xy, GaussianRational(3, 4))
        assert abs(l1_norm(p) - 5.0) < 1e-12


class TestH2:
    def test_xy(self, amb_xy):
        assert h2_norm_sq(P("x*y", amb_xy)) == Fraction(1, 2)

    def test_pure_powers_are_unit(self, amb_xy):
        for n in range(1, 9):
            assert h2_norm_sq(Polynomial.monomial(amb_xy, (n, 0))) == 1

    def test_factorial_values(self, amb_wxy):
        # w, x, y ambient: x^4 w has weight 4!1!/5!
        assert h2_norm_sq(P("x^4*w", amb_wxy)) == Fraction(1, 5)
        assert h2_norm_sq(P("w^3*y^2", amb_wxy)) == Fraction(1, 10)

    def test_example_norm_sequences(self, amb_wxy):
        for n in range(1, 13):
            h = P(f"x^4*w^{n}", amb_wxy)
            assert h2_norm_sq(h) == Fraction(24, (n + 1) * (n + 2) * (n + 3) * (n + 4))
            fterm = P(f"w^{n + 2}*y^2", amb_wxy)
            assert h2_norm_sq(fterm) == Fraction(2, (n + 3) * (n + 4))


class TestInner:
    def test_distinct_monomials_orthogonal(self, amb_xy):
        assert h2_inner(P("x^2", amb_xy), P("x*y", amb_xy)) == 0

    def test_channels_orthogonal(self):
        amb = Ambient(("x", "y"), r=2)
        p = Polynomial.monomial(amb, (2, 0), channel=0)
        q = Polynomial.monomial(amb, (2, 0), channel=1)
        assert h2_inner(p, q) == 0

    def test_plus_minus(self, amb_xy):
        assert h2_inner(P("x + y", amb_xy), P("x - y", amb_xy)) == 0

    def test_inner_matches_norm(self, amb_xy):
        p = P("x^2 - 3*x*y + 1/2*y^2", amb_xy)
        assert h2_inner(p, p) == h2_norm_sq(p)

    def test_sesquilinear_with_gaussians(self, amb_xy):
        i = GaussianRational(0, 1)
        p = Polynomial.constant(amb_xy, i)
        assert h2_inner(p, p) == 1

    @given(st.data())
    @settings(max_examples=60)
    def test_cauchy_schwarz(self, data):
        amb = Ambient(("x", "y"))
        p = data.draw(polynomials(amb, max_terms=4))
        q = data.draw(polynomials(amb, max_terms=4))
        lhs = h2_inner(p, q) ** 2
        assert lhs <= h2_norm_sq(p) * h2_norm_sq(q)

    def test_pythagoras_disjoint_support(self, amb_xy):
        p = P("x^2 + x*y", amb_xy)
        q = P("y^2 - 3", amb_xy)
        assert h2_norm_sq(p + q) == h2_norm_sq(p) + h2_norm_sq(q)


class TestMultiplierNorm:
    @given(st.data())
    @settings(max_examples=60)
    def test_l1_submultiplicative(self, data):
        amb = Ambient(("x", "y"))
        p = data.draw(polynomials(amb, max_terms=4))
        q = data.draw(polynomials(amb, max_terms=4))
        assert l1_norm(p * q) <= l1_norm(p) * l1_norm(q)

    @given(st.data())
    @settings(max_examples=60)
    def test_monomial_multiplication_attains_norm(self, data):
        amb = Ambient(("x", "y"))
        p = data.draw(nonzero_polynomials(amb, max_terms=4))
        beta = data.draw(exponents(2))
        mono = Polynomial.monomial(amb, beta)
        assert l1_norm(p * mono) == l1_norm(p)


def test_monomial_weight_cached_and_exact():
    assert monomial_h2_norm_sq((3, 1, 0)) == Fraction(6, 24)
    assert monomial_h2_norm_sq((0, 0, 0)) == 1
