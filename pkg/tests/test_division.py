"""Division algorithms: worked examples, loop invariants, termination."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablediv import (
    BIVARIATE_STABLE,
    CLO_DEFAULT,
    DOMINANT_MIN_TERM,
    Ambient,
    CoefficientDomainError,
    Polynomial,
    Strategy,
    UnsupportedProductError,
    ZeroDivisorError,
    divide,
    graded_lex,
    l1_norm,
    leading_term,
    parse_order_spec,
    parse_polynomial,
)

from conftest import nonzero_polynomials, polynomials


def P(text, amb):
    return parse_polynomial(text, amb)


@pytest.fixture
def example_basis(amb_xy):
    return [P("x^2 + 2*x*y", amb_xy), P("y^2", amb_xy)]


class TestWorkedExamples:
    def test_cubic(self, amb_xy, example_basis):
        res = divide(P("x^3", amb_xy), example_basis, graded_lex(amb_xy))
        assert res.quotients[0] == P("x - 2*y", amb_xy)
        assert res.quotients[1] == P("4*x", amb_xy)
        assert res.remainder.is_zero()

    def test_quartic_default_strategy(self, amb_xy, example_basis):
        res = divide(P("x^4", amb_xy), example_basis, graded_lex(amb_xy), CLO_DEFAULT)
        assert res.quotients[0] == P("x^2 - 2*x*y + 4*y^2", amb_xy)
        assert res.quotients[1] == P("-8*x*y", amb_xy)
        assert res.remainder.is_zero()

    def test_quartic_max_index_strategy(self, amb_xy, example_basis):
        res = divide(P("x^4", amb_xy), example_basis, graded_lex(amb_xy), BIVARIATE_STABLE)
        assert res.quotients[0] == P("x^2 - 2*x*y", amb_xy)
        assert res.quotients[1] == P("4*x^2", amb_xy)
        assert res.remainder.is_zero()

    def test_three_variable_family(self, amb_wxy):
        order = parse_order_spec("grlex:x>w>y", amb_wxy)
        F = [P("x^2 + w*y", amb_wxy), P("y^2", amb_wxy)]
        for n in range(1, 6):
            res = divide(P(f"x^4*w^{n}", amb_wxy), F, order)
            assert res.quotients[0] == P(f"x^2*w^{n} - w^{n + 1}*y", amb_wxy)
            assert res.quotients[1] == P(f"w^{n + 2}", amb_wxy)
            assert res.remainder.is_zero()


class TestValidation:
    def test_zero_divisor(self, amb_xy):
        with pytest.raises(ZeroDivisorError):
            divide(P("x", amb_xy), [Polynomial.zero(amb_xy)], graded_lex(amb_xy))

    def test_float_domain_rejected(self, amb_xy):
        with pytest.raises(CoefficientDomainError):
            divide(P("x", amb_xy).to_float(), [P("x", amb_xy)], graded_lex(amb_xy))

    def test_vector_divisor_rejected(self):
        amb = Ambient(("x", "y"), r=2)
        h = Polynomial.monomial(Ambient(("x", "y")), (1, 0))
        f = Polynomial.monomial(amb, (1, 0), channel=1)
        with pytest.raises(UnsupportedProductError):
            divide(h, [f], graded_lex(Ambient(("x", "y"))))


def random_divisions():
    return st.data()


ALL_STRATEGIES = [
    CLO_DEFAULT,
    BIVARIATE_STABLE,
    DOMINANT_MIN_TERM,
    Strategy("II", "max-index", "leading"),
]


class TestInvariants:
    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_identity_and_irreducibility_all_strategies(self, data):
        amb = Ambient(("x", "y", "w"))
        order = graded_lex(amb)
        k = data.draw(st.integers(1, 4))
        divisors = [
            data.draw(nonzero_polynomials(amb, max_degree=4, max_terms=3))
            for _ in range(k)
        ]
        h = data.draw(polynomials(amb, max_degree=8, max_terms=6))
        lead = [leading_term(f, order).index for f in divisors]
        for strategy in ALL_STRATEGIES:
            res = divide(h, divisors, order, strategy)
            assert res.check_identity(h, divisors)
            for alpha, _, _ in res.remainder.terms():
                assert not any(
                    all(l <= a for l, a in zip(lt, alpha)) for lt in lead
                ), "remainder term is reducible"

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_step_invariant_exact(self, data):
        amb = Ambient(("x", "y"))
        order = graded_lex(amb)
        divisors = [
            data.draw(nonzero_polynomials(amb, max_degree=3, max_terms=3)) for _ in range(2)
        ]
        h = data.draw(polynomials(amb, max_degree=6, max_terms=5))
        for strategy in (CLO_DEFAULT, DOMINANT_MIN_TERM):
            res = divide(h, divisors, order, strategy, keep_states=True)
            for step in res.trace:
                state = step.state
                total = state.p + state.remainder
                for a, f in zip(state.quotients, divisors):
                    total = total + a * f
                assert total == h

    def test_trace_records_norms(self, amb_xy, example_basis):
        res = divide(P("x^4", amb_xy), example_basis, graded_lex(amb_xy))
        assert len(res.trace) > 0
        assert all(step.p_l1 >= 0 for step in res.trace)
        assert res.trace[-1].p_l1 == 0.0


class TestDominantBehaviour:
    def test_l1_nonincreasing_under_dominance(self, amb_xy):
        order = graded_lex(amb_xy)
        F = [P("x^2 + 1/4*x*y", amb_xy), P("y^2", amb_xy)]
        h = P("x^5 + x^3*y^2 - 2*x^2*y^2 + y^4", amb_xy)
        res = divide(h, F, order, DOMINANT_MIN_TERM, keep_states=True)
        prev = l1_norm(h)
        for step in res.trace:
            current = l1_norm(step.state.p) + l1_norm(step.state.remainder)
            assert current <= prev
            prev = current

    def test_created_terms_stay_below_reduced_term(self, amb_xy):
        order = graded_lex(amb_xy)
        F = [P("x^2 + 1/4*x*y", amb_xy), P("y^2", amb_xy)]
        h = P("x^5 + x^3*y^2 - 2*x^2*y^2 + y^4", amb_xy)
        res = divide(h, F, order, DOMINANT_MIN_TERM)
        for step in res.trace:
            if step.action == "reduce" and step.created_max is not None:
                assert order.compare(step.created_max, step.term.index) == -1
