"""Exception types shared across the package."""


class StableDivError(Exception):
    """Base class for all errors raised by stablediv."""


class AmbientMismatchError(StableDivError):
    """Operands live in different polynomial ambients (variables or channels)."""


class CoefficientDomainError(StableDivError):
    """Exact-rational and floating-point polynomials were mixed."""


class UnsupportedProductError(StableDivError):
    """Product of two vector-valued polynomials is not defined."""


class SingularMatrixError(StableDivError):
    """A linear change of variables was numerically singular."""


class FloatOverflowError(StableDivError):
    """An exact coefficient does not fit in a double."""


class ZeroPolynomialError(StableDivError):
    """The zero polynomial has no leading term."""


class ZeroDivisorError(StableDivError):
    """A divisor list contained the zero polynomial."""


class MembershipError(StableDivError):
    """The dividend does not belong to the module spanned by the generators."""


class PreconditionError(StableDivError):
    """An operation's documented precondition was violated."""


class WindowTooSmallError(StableDivError):
    """Hilbert-function samples were not yet polynomial on the window."""

    def __init__(self, message: str, suggested_start: int):
        super().__init__(message)
        self.suggested_start = suggested_start


class PolynomialSyntaxError(StableDivError):
    """Malformed polynomial text; carries the offending column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


class OrderSpecError(StableDivError):
    """Malformed monomial-order specification string."""


class InternalConsistencyError(StableDivError):
    """A guaranteed postcondition failed; indicates a bug, not bad input."""
