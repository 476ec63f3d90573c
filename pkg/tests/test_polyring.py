"""Polynomial arithmetic, grading, substitution and the text grammar."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablediv import (
    Ambient,
    AmbientMismatchError,
    FloatOverflowError,
    GaussianRational,
    Polynomial,
    PolynomialSyntaxError,
    SingularMatrixError,
    UnsupportedProductError,
    format_polynomial,
    parse_polynomial,
)

from conftest import polynomials, small_fractions


def P(text, amb):
    return parse_polynomial(text, amb)


class TestArithmetic:
    def test_add_cancellation(self, amb_xy):
        assert P("x^2 + 2*x*y", amb_xy) + P("-2*x*y", amb_xy) == P("x^2", amb_xy)

    def test_add_identity(self, amb_xy):
        p = P("x^2 + 2*x*y", amb_xy)
        assert p + Polynomial.zero(amb_xy) == p

    def test_add_disjoint(self, amb_xy):
        assert P("x^2 + 2*x*y", amb_xy) + P("y^2", amb_xy) == P("x^2 + 2*x*y + y^2", amb_xy)

    def test_add_ambient_mismatch(self, amb_xy, amb_wxy):
        with pytest.raises(AmbientMismatchError):
            P("x", amb_xy) + P("x", amb_wxy)

    def test_mul_expansion(self, amb_xy):
        assert P("x - 2*y", amb_xy) * P("x^2 + 2*x*y", amb_xy) == P("x^3 - 4*x*y^2", amb_xy)

    def test_mul_monomials(self, amb_xy):
        assert P("x^2*y", amb_xy) * P("x*y^3", amb_xy) == P("x^3*y^4", amb_xy)

    def test_mul_identity(self, amb_xy):
        p = P("x^2 - 7*y", amb_xy)
        assert P("1", amb_xy) * p == p

    def test_mul_two_vector_valued_rejected(self):
        amb = Ambient(("x",), r=2)
        p = Polynomial.monomial(amb, (1,), channel=0)
        q = Polynomial.monomial(amb, (1,), channel=1)
        with pytest.raises(UnsupportedProductError):
            p * q

    def test_scalar_times_vector(self):
        amb = Ambient(("x", "y"), r=2)
        scalar = P("x + y", Ambient(("x", "y")))
        vec = Polynomial.monomial(amb, (1, 0), Fraction(2), channel=1)
        prod = scalar * vec
        assert prod.coefficient((2, 0), 1) == 2
        assert prod.coefficient((1, 1), 1) == 2


class TestCalculusGrading:
    def test_derivative(self, amb_xy):
        assert P("x^2 + 2*x*y", amb_xy).derivative(0) == P("2*x + 2*y", amb_xy)
        assert P("x^2", amb_xy).derivative(1).is_zero()
        assert P("x^3", amb_xy).derivative(0) == P("3*x^2", amb_xy)

    def test_homogeneous_component(self, amb_xy):
        p = P("x^2 + x", amb_xy)
        assert p.homogeneous_component(1) == P("x", amb_xy)
        q = P("x^2 + 2*x*y", amb_xy)
        assert q.homogeneous_component(2) == q
        assert q.homogeneous_component(3).is_zero()

    @given(st.data())
    @settings(max_examples=50)
    def test_components_sum_to_p(self, data):
        amb = Ambient(("x", "y"))
        p = data.draw(polynomials(amb))
        total = Polynomial.zero(amb)
        for _, comp in p.homogeneous_components():
            total = total + comp
        assert total == p

    @given(st.data())
    @settings(max_examples=50)
    def test_leibniz(self, data):
        amb = Ambient(("x", "y", "w"))
        p = data.draw(polynomials(amb, max_degree=3, max_terms=4))
        q = data.draw(polynomials(amb, max_degree=3, max_terms=4))
        for j in range(amb.d):
            assert (p * q).derivative(j) == p.derivative(j) * q + p * q.derivative(j)


class TestRingAxioms:
    @given(st.data())
    @settings(max_examples=60)
    def test_ring_axioms(self, data):
        amb = Ambient(("x", "y"))
        p = data.draw(polynomials(amb, max_degree=3, max_terms=4))
        q = data.draw(polynomials(amb, max_degree=3, max_terms=4))
        s = data.draw(polynomials(amb, max_degree=3, max_terms=4))
        assert (p + q) + s == p + (q + s)
        assert p * q == q * p
        assert (p * q) * s == p * (q * s)
        assert p * (q + s) == p * q + p * s


class TestSubstitution:
    def test_diagonal(self):
        amb = Ambient(("w", "x", "y"))
        p = P("x^2 + w*y", amb)
        image = p.substitute_linear([[2, 0, 0], [0, 3, 0], [0, 0, 5]])
        assert image == P("9*x^2 + 10*w*y", amb)

    def test_identity(self, amb_xy):
        p = P("x^2 - 3*x*y + y^2", amb_xy)
        eye = [[1, 0], [0, 1]]
        assert p.substitute_linear(eye) == p

    def test_one_variable_scaling(self):
        amb = Ambient(("x",))
        assert P("x", amb).substitute_linear([[2]]) == P("2*x", amb)

    def test_composition_law(self, amb_xy):
        p = P("x^2 + x*y - y^2", amb_xy)
        a = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(1)]]
        b = [[Fraction(3), Fraction(0)], [Fraction(1), Fraction(1)]]
        ab = [
            [sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        assert p.substitute_linear(a).substitute_linear(b) == p.substitute_linear(ab)

    def test_singular_float_matrix_rejected(self, amb_xy):
        p = P("x + y", amb_xy).to_float()
        with pytest.raises(SingularMatrixError):
            p.substitute_linear([[1.0, 1.0], [1.0, 1.0]])

    def test_float_roundtrip_inverse(self, amb_xy):
        import numpy as np

        rng = np.random.default_rng(7)
        a = rng.normal(size=(2, 2)) + np.eye(2) * 3
        inv = np.linalg.inv(a)
        p = P("x^2 - 3*x*y + 2*y^2 + x", amb_xy).to_float()
        back = p.substitute_linear(a).substitute_linear(inv)
        for alpha, ch, c in p.terms():
            assert abs(back.coefficient(alpha, ch) - c) < 1e-12


class TestFloatConversion:
    def test_half(self, amb_xy):
        p = P("1/2*x", amb_xy).to_float()
        assert p.coefficient((1, 0)) == 0.5

    def test_power_of_two_exact(self, amb_xy):
        p = Polynomial.monomial(amb_xy, (1, 19), Fraction((-2) ** 20))
        assert p.to_float().coefficient((1, 19)) == 1048576.0

    def test_third_within_ulp(self, amb_xy):
        c = P("1/3*x", amb_xy).to_float().coefficient((1, 0))
        assert abs(c - 1 / 3) < 1e-16

    def test_overflow_reported(self, amb_xy):
        p = Polynomial.constant(amb_xy, Fraction(10**400))
        with pytest.raises(FloatOverflowError):
            p.to_float()


class TestGaussianRational:
    def test_field_ops(self):
        a = GaussianRational(1, 2)
        b = GaussianRational(Fraction(1, 2), -1)
        assert a * b == GaussianRational(Fraction(5, 2), 0)
        assert (a / b) * b == a
        assert a + b - b == a
        assert a.conjugate().imag == -2

    def test_real_gaussians_collapse_to_fractions(self, amb_xy):
        p = Polynomial.constant(amb_xy, GaussianRational(3, 0))
        assert p.coefficient((0, 0)) == Fraction(3)
        assert isinstance(p.coefficient((0, 0)), Fraction)

    def test_abs_sq(self):
        assert GaussianRational(3, 4).abs_sq() == 25


class TestGrammar:
    def test_vector_example(self):
        amb = Ambient(("w", "x", "y"), r=2)
        p = parse_polynomial("3/2*x^2*y*e1 - w*e2", amb)
        assert p.coefficient((0, 2, 1), 0) == Fraction(3, 2)
        assert p.coefficient((1, 0, 0), 1) == -1

    def test_optional_star(self, amb_xy):
        assert P("2x y", amb_xy) == P("2*x*y", amb_xy)

    def test_gaussian_literal(self, amb_xy):
        p = P("(1/2+3i)*x", amb_xy)
        assert p.coefficient((1, 0)) == GaussianRational(Fraction(1, 2), 3)

    def test_parse_errors_carry_position(self, amb_xy):
        with pytest.raises(PolynomialSyntaxError) as err:
            P("x^", amb_xy)
        assert err.value.position >= 0
        with pytest.raises(PolynomialSyntaxError):
            P("x + z", amb_xy)
        with pytest.raises(PolynomialSyntaxError):
            P("", amb_xy)

    def test_zero_prints_as_zero(self, amb_xy):
        assert format_polynomial(Polynomial.zero(amb_xy)) == "0"

    @given(st.data())
    @settings(max_examples=80)
    def test_roundtrip_scalar(self, data):
        amb = Ambient(("w", "x", "y"))
        p = data.draw(polynomials(amb))
        assert parse_polynomial(format_polynomial(p), amb) == p

    @given(st.data())
    @settings(max_examples=60)
    def test_roundtrip_vector_gaussian(self, data):
        amb = Ambient(("x", "y"), r=2)
        coeffs = st.builds(GaussianRational, small_fractions(), small_fractions())
        p = data.draw(polynomials(amb, coeffs=coeffs))
        assert parse_polynomial(format_polynomial(p), amb) == p


class TestAmbient:
    def test_channel_name_collision_rejected(self):
        with pytest.raises(ValueError):
            Ambient(("e1", "x"))

    def test_default_names(self):
        assert Ambient.default(3).names == ("x1", "x2", "x3")
