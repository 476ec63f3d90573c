"""Monomial orders and leading-term extraction.

Orders are total and multiplicative.  Graded lex compares total degree
first and then lexicographically along the variable priority; pure lex
compares along the priority only.  The priority lists variable indices
with the highest variable first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OrderSpecError, ZeroPolynomialError
from .polyring import Ambient, MultiIndex, Polynomial, Term, degree


@dataclass(frozen=True)
class MonomialOrder:
    kind: str  # "grlex" | "lex"
    priority: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("grlex", "lex"):
            raise OrderSpecError(f"unknown order kind {self.kind!r}")
        if sorted(self.priority) != list(range(len(self.priority))):
            raise OrderSpecError("priority must be a permutation of the variable indices")

    @property
    def d(self) -> int:
        return len(self.priority)

    def key(self, alpha: MultiIndex):
        """Sort key: larger key means larger monomial."""
        permuted = tuple(alpha[i] for i in self.priority)
        return (degree(alpha),) + permuted if self.kind == "grlex" else permuted

    def compare(self, alpha: MultiIndex, beta: MultiIndex) -> int:
        """-1, 0 or 1 as alpha <, =, > beta."""
        if len(alpha) != self.d or len(beta) != self.d:
            raise ValueError("multi-index length does not match the order")
        ka, kb = self.key(alpha), self.key(beta)
        return (ka > kb) - (ka < kb)

    def spec(self, ambient: Ambient) -> str:
        chain = ">".join(ambient.names[i] for i in self.priority)
        return f"{self.kind}:{chain}"


def graded_lex(ambient: Ambient, priority_names: list[str] | None = None) -> MonomialOrder:
    return MonomialOrder("grlex", _priority(ambient, priority_names))


def pure_lex(ambient: Ambient, priority_names: list[str] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", _priority(ambient, priority_names))


def dominance_order(ambient: Ambient) -> MonomialOrder:
    """Pure lex with the last declared variable highest.

    This is the order convention under which the rescaling construction
    guarantees dominant leading terms.
    """
    return MonomialOrder("lex", tuple(reversed(range(ambient.d))))


def _priority(ambient: Ambient, priority_names: list[str] | None) -> tuple[int, ...]:
    if priority_names is None:
        return tuple(range(ambient.d))
    try:
        indices = tuple(ambient.names.index(name) for name in priority_names)
    except ValueError as exc:
        raise OrderSpecError(f"variable not in ambient: {exc}") from exc
    if sorted(indices) != list(range(ambient.d)):
        raise OrderSpecError("priority must list every variable exactly once")
    return indices


def parse_order_spec(spec: str, ambient: Ambient) -> MonomialOrder:
    """Parse strings like ``grlex:x>y`` or ``lex:w>x>y``."""
    head, sep, tail = spec.partition(":")
    kind = head.strip()
    if kind not in ("grlex", "lex"):
        raise OrderSpecError(f"unknown order kind {kind!r} in {spec!r}")
    if not sep or not tail.strip():
        raise OrderSpecError(f"missing variable chain in {spec!r}")
    names = [name.strip() for name in tail.split(">")]
    if any(not name for name in names):
        raise OrderSpecError(f"empty variable name in {spec!r}")
    return MonomialOrder(kind, _priority(ambient, names))


def leading_term(p: Polynomial, order: MonomialOrder) -> Term:
    """Order-maximal stored term; ties between channels go to the lowest channel."""
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no leading term")
    best = max(p.terms(), key=lambda t: (order.key(t.index), -t.channel))
    return best


def leading_index(p: Polynomial, order: MonomialOrder) -> MultiIndex:
    return leading_term(p, order).index


def leading_coefficient(p: Polynomial, order: MonomialOrder):
    return leading_term(p, order).coefficient
