"""Multivariate polynomial division with pluggable reduction strategies.

Two textbook algorithms are implemented over the exact domain:

* Algorithm I repeatedly reduces the *leading* term of the working
  polynomial p; leading terms not divisible by any divisor move to the
  remainder.  After every iteration ``h == sum(a_i f_i) + p + r``.
* Algorithm II reduces *any* reducible term of p (chosen by strategy)
  until no term of p is reducible, then sets ``r = p``.  After every
  iteration ``h == sum(a_i f_i) + p``.

Both terminate for every input and preserve the division identity
exactly.  The full step trace is recorded so callers can audit the loop
invariant and growth behaviour of p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AmbientMismatchError,
    CoefficientDomainError,
    PreconditionError,
    UnsupportedProductError,
    ZeroDivisorError,
)
from .norms import monomial_h2_norm_sq
from .ordering import MonomialOrder
from .polyring import MultiIndex, Polynomial, Term, index_add, index_divides, index_sub


@dataclass(frozen=True)
class Strategy:
    """Which algorithm runs and how its free choices are resolved."""

    algorithm: str = "I"  # "I" | "II"
    divisor_choice: str = "min-index"  # "min-index" | "max-index"
    term_choice: str = "leading"  # Algorithm II only: "leading" | "minimal-reducible"

    def __post_init__(self):
        if self.algorithm not in ("I", "II"):
            raise PreconditionError(f"unknown algorithm {self.algorithm!r}")
        if self.divisor_choice not in ("min-index", "max-index"):
            raise PreconditionError(f"unknown divisor choice {self.divisor_choice!r}")
        if self.term_choice not in ("leading", "minimal-reducible"):
            raise PreconditionError(f"unknown term choice {self.term_choice!r}")


CLO_DEFAULT = Strategy("I", "min-index")
BIVARIATE_STABLE = Strategy("I", "max-index")
DOMINANT_MIN_TERM = Strategy("II", "min-index", "minimal-reducible")

_PRESETS = {
    "clo-default": CLO_DEFAULT,
    "bivariate-stable": BIVARIATE_STABLE,
    "dominant-min-term": DOMINANT_MIN_TERM,
}


def strategy_by_name(name: str) -> Strategy:
    try:
        return _PRESETS[name]
    except KeyError:
        raise PreconditionError(f"unknown strategy preset {name!r}") from None


@dataclass(frozen=True)
class DivisionState:
    """Exact snapshot after one step (recorded only with keep_states)."""

    quotients: tuple[Polynomial, ...]
    p: Polynomial
    remainder: Polynomial


@dataclass(frozen=True)
class DivisionStep:
    index: int
    action: str  # "reduce" | "remainder"
    term: Term  # the term taken out of p at this step
    divisor: int | None  # 0-based divisor index for "reduce" steps
    p_l1: float
    p_h2_sq: float
    created_max: MultiIndex | None  # largest exponent introduced by the divisor tail
    state: DivisionState | None = None


@dataclass(frozen=True)
class DivisionResult:
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial
    trace: tuple[DivisionStep, ...] = field(repr=False)

    def check_identity(self, h: Polynomial, divisors) -> bool:
        total = self.remainder
        for a, f in zip(self.quotients, divisors):
            total = total + a * f
        return total == h


def _float_l1(terms: dict) -> float:
    return float(sum(abs(complex(c)) for c in terms.values())) if terms else 0.0


def _float_h2_sq(terms: dict, weight) -> float:
    total = 0.0
    for (alpha, _), c in terms.items():
        z = complex(c)
        total += (z.real * z.real + z.imag * z.imag) * weight(alpha)
    return total


def divide(
    h: Polynomial,
    divisors,
    order: MonomialOrder,
    strategy: Strategy = CLO_DEFAULT,
    keep_states: bool = False,
) -> DivisionResult:
    """Divide h by an ordered tuple of nonzero scalar divisors.

    Returns quotients a_1..a_k and remainder r with ``h = sum a_i f_i + r``
    exactly; no term of r is divisible by any divisor's leading term.
    """
    divisors = list(divisors)
    if not h.exact or any(not f.exact for f in divisors):
        raise CoefficientDomainError("division runs over the exact domain only")
    if h.ambient.r != 1:
        raise UnsupportedProductError("vector-valued dividends are not supported")
    for f in divisors:
        if f.ambient.r != 1:
            raise UnsupportedProductError("vector-valued divisors are not supported")
        if f.ambient.names != h.ambient.names:
            raise AmbientMismatchError("divisors must share the dividend's variables")
        if f.is_zero():
            raise ZeroDivisorError("divisor list contains the zero polynomial")
    if order.d != h.ambient.d:
        raise PreconditionError("order arity does not match the ambient")

    def weight(alpha):
        return float(monomial_h2_norm_sq(alpha))

    ambient = h.ambient
    key = order.key

    lead: list[tuple[MultiIndex, object]] = []
    tails: list[list[tuple[MultiIndex, object]]] = []
    for f in divisors:
        ft = f.scalar_terms()
        lt_alpha = max(ft, key=key)
        lead.append((lt_alpha, ft[lt_alpha]))
        tails.append([(beta, c) for beta, c in ft.items() if beta != lt_alpha])

    p = dict(h.scalar_terms())
    quotients: list[dict] = [{} for _ in divisors]
    remainder: dict = {}
    trace: list[DivisionStep] = []

    def emit(action, t_alpha, t_coeff, divisor, created_max):
        state = None
        if keep_states:
            state = DivisionState(
                tuple(Polynomial.from_scalar_terms(ambient, q) for q in quotients),
                Polynomial.from_scalar_terms(ambient, p),
                Polynomial.from_scalar_terms(ambient, remainder),
            )
        trace.append(
            DivisionStep(
                index=len(trace),
                action=action,
                term=Term(t_alpha, 0, t_coeff),
                divisor=divisor,
                p_l1=_float_l1(p),
                p_h2_sq=_float_h2_sq({(a, 0): c for a, c in p.items()}, weight),
                created_max=created_max,
                state=state,
            )
        )

    def reduce_term(t_alpha, i0):
        t_coeff = p[t_alpha]
        lt_alpha, lt_coeff = lead[i0]
        q_alpha = index_sub(t_alpha, lt_alpha)
        q_coeff = t_coeff / lt_coeff
        quotients[i0][q_alpha] = quotients[i0].get(q_alpha, 0) + q_coeff
        del p[t_alpha]
        created_max = None
        for beta, c in tails[i0]:
            target = index_add(q_alpha, beta)
            value = p.get(target, 0) - q_coeff * c
            if value:
                p[target] = value
            else:
                p.pop(target, None)
            if created_max is None or key(target) > key(created_max):
                created_max = target
        emit("reduce", t_alpha, t_coeff, i0, created_max)

    if strategy.algorithm == "I":
        while p:
            lt_alpha = max(p, key=key)
            matches = [i for i, (a, _) in enumerate(lead) if index_divides(a, lt_alpha)]
            if not matches:
                c = p.pop(lt_alpha)
                remainder[lt_alpha] = remainder.get(lt_alpha, 0) + c
                emit("remainder", lt_alpha, c, None, None)
            else:
                i0 = min(matches) if strategy.divisor_choice == "min-index" else max(matches)
                reduce_term(lt_alpha, i0)
    else:
        while True:
            reducible = [
                alpha
                for alpha in p
                if any(index_divides(a, alpha) for a, _ in lead)
            ]
            if not reducible:
                break
            pick = max if strategy.term_choice == "leading" else min
            t_alpha = pick(reducible, key=key)
            matches = [i for i, (a, _) in enumerate(lead) if index_divides(a, t_alpha)]
            i0 = min(matches) if strategy.divisor_choice == "min-index" else max(matches)
            reduce_term(t_alpha, i0)
        remainder = p
        p = {}

    return DivisionResult(
        quotients=tuple(Polynomial.from_scalar_terms(ambient, q) for q in quotients),
        remainder=Polynomial.from_scalar_terms(ambient, remainder),
        trace=tuple(trace),
    )
