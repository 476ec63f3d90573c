"""Sparse multivariate polynomial arithmetic over two coefficient domains.

A polynomial is a canonical sparse map (multi-index, channel) -> coefficient.
Multi-indices are plain tuples of non-negative ints, one entry per variable.
The *exact* domain uses Fraction coefficients (GaussianRational when an
imaginary part is needed) and never rounds; the *float* domain uses complex
doubles.  Channels model vector-valued polynomials: a scalar polynomial has
channel count r = 1 and every term sits in channel 0.

Polynomials are immutable after construction, so they are safe to share and
all operations are pure functions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .errors import (
    AmbientMismatchError,
    CoefficientDomainError,
    FloatOverflowError,
    PolynomialSyntaxError,
    SingularMatrixError,
    UnsupportedProductError,
)

MultiIndex = tuple[int, ...]


def degree(alpha: MultiIndex) -> int:
    """Total degree |alpha|."""
    return sum(alpha)


def index_add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def index_sub(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    """alpha - beta; caller guarantees divisibility."""
    return tuple(a - b for a, b in zip(alpha, beta))


def index_divides(alpha: MultiIndex, beta: MultiIndex) -> bool:
    """True iff z^alpha divides z^beta."""
    return all(a <= b for a, b in zip(alpha, beta))


def index_lcm(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(max(a, b) for a, b in zip(alpha, beta))


def exponents_of_degree(d: int, n: int) -> list[MultiIndex]:
    """All d-variable exponent tuples of total degree n, lexicographically descending."""
    if d == 1:
        return [(n,)]
    out: list[MultiIndex] = []
    for e in range(n, -1, -1):
        out.extend((e,) + rest for rest in exponents_of_degree(d - 1, n - e))
    return out


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        object.__setattr__(self, "real", Fraction(real))
        object.__setattr__(self, "imag", Fraction(imag))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.real + other.real, self.imag + other.imag)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.real - other.real, self.imag - other.imag)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.real - self.real, other.imag - self.imag)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = other.real * other.real + other.imag * other.imag
        if den == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.real * other.real + self.imag * other.imag) / den,
            (self.imag * other.real - self.real * other.imag) / den,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.real, -self.imag)

    def abs_sq(self) -> Fraction:
        return self.real * self.real + self.imag * self.imag

    def __abs__(self) -> float:
        return math.sqrt(float(self.abs_sq()))

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, (int, Fraction)):
            return self.imag == 0 and self.real == other
        return NotImplemented

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __repr__(self):
        return f"GaussianRational({self.real!r}, {self.imag!r})"


def conjugate_coeff(c):
    """Complex conjugate for any supported coefficient type."""
    if isinstance(c, (GaussianRational, complex)):
        return c.conjugate()
    return c


def coeff_abs_sq(c):
    """|c|^2, exact for exact coefficients."""
    if isinstance(c, GaussianRational):
        return c.abs_sq()
    if isinstance(c, complex):
        return c.real * c.real + c.imag * c.imag
    return c * c


def coeff_abs_exact(c) -> Fraction | None:
    """Exact |c| as a Fraction, or None when |c| is irrational."""
    if isinstance(c, Fraction):
        return abs(c)
    if isinstance(c, int):
        return Fraction(abs(c))
    if isinstance(c, GaussianRational):
        if c.imag == 0:
            return abs(c.real)
        if c.real == 0:
            return abs(c.imag)
        return None
    return None


def _canonical_exact(c):
    """Normalize an exact coefficient: ints to Fraction, real Gaussians to Fraction."""
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, GaussianRational) and c.imag == 0:
        return c.real
    return c


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_CHANNEL_RE = re.compile(r"^e\d+$")


@dataclass(frozen=True)
class Ambient:
    """The ring data: ordered variable names and channel count r."""

    names: tuple[str, ...]
    r: int = 1

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("need at least one variable")
        if self.r < 1:
            raise ValueError("channel count r must be >= 1")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if _CHANNEL_RE.match(name):
                raise ValueError(f"variable name {name!r} collides with channel syntax")

    @property
    def d(self) -> int:
        return len(self.names)

    @staticmethod
    def default(d: int, r: int = 1) -> "Ambient":
        return Ambient(tuple(f"x{i + 1}" for i in range(d)), r)

    def scalar(self) -> "Ambient":
        return Ambient(self.names, 1) if self.r != 1 else self


class Term(NamedTuple):
    """One stored monomial term: coefficient * z^index placed in one channel."""

    index: MultiIndex
    channel: int
    coefficient: object


def _term_sort_key(key):
    alpha, channel = key
    # graded-lex with the natural variable priority, leading term first
    return (-degree(alpha), tuple(-e for e in alpha), channel)


class Polynomial:
    """Immutable sparse polynomial over an :class:`Ambient`.

    ``terms`` maps (multi-index, channel) to a nonzero coefficient.  All
    constructors canonicalize: zero coefficients are dropped, ints become
    Fractions, real GaussianRationals collapse to Fractions, floats become
    complex.  ``exact`` tags the coefficient domain.
    """

    __slots__ = ("ambient", "_terms", "exact", "_keys")

    def __init__(self, ambient: Ambient, terms: dict | None = None, exact: bool | None = None):
        cleaned: dict = {}
        seen_exact = None
        for (alpha, channel), c in (terms or {}).items():
            if isinstance(c, (int, Fraction, GaussianRational)):
                c = _canonical_exact(c)
                c_exact = True
            elif isinstance(c, (float, complex)):
                c = complex(c)
                c_exact = False
            else:
                raise CoefficientDomainError(f"unsupported coefficient type {type(c).__name__}")
            if seen_exact is None:
                seen_exact = c_exact
            elif seen_exact != c_exact:
                raise CoefficientDomainError("mixed exact and float coefficients")
            if not c:
                continue
            alpha = tuple(alpha)
            if len(alpha) != ambient.d or any(e < 0 for e in alpha):
                raise ValueError(f"bad exponent tuple {alpha} for d={ambient.d}")
            if not 0 <= channel < ambient.r:
                raise ValueError(f"channel {channel} out of range for r={ambient.r}")
            key = (alpha, channel)
            if key in cleaned:
                raise ValueError(f"duplicate term key {key}")
            cleaned[key] = c
        if exact is None:
            exact = True if seen_exact is None else seen_exact
        elif seen_exact is not None and exact != seen_exact:
            raise CoefficientDomainError("declared domain disagrees with coefficients")
        keys = sorted(cleaned, key=_term_sort_key)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "_terms", {k: cleaned[k] for k in keys})
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "_keys", tuple(keys))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ---------------------------------------------------------------- constructors

    @staticmethod
    def zero(ambient: Ambient, exact: bool = True) -> "Polynomial":
        return Polynomial(ambient, {}, exact=exact)

    @staticmethod
    def constant(ambient: Ambient, value) -> "Polynomial":
        return Polynomial(ambient, {((0,) * ambient.d, 0): value})

    @staticmethod
    def variable(ambient: Ambient, i: int) -> "Polynomial":
        alpha = tuple(1 if j == i else 0 for j in range(ambient.d))
        return Polynomial(ambient, {(alpha, 0): Fraction(1)})

    @staticmethod
    def monomial(ambient: Ambient, alpha: Iterable[int], coefficient=Fraction(1), channel: int = 0) -> "Polynomial":
        return Polynomial(ambient, {(tuple(alpha), channel): coefficient})

    @staticmethod
    def from_scalar_terms(ambient: Ambient, terms: dict, exact: bool | None = None) -> "Polynomial":
        """Build from a map multi-index -> coefficient (channel 0)."""
        return Polynomial(ambient, {(alpha, 0): c for alpha, c in terms.items()}, exact=exact)

    # ---------------------------------------------------------------- inspection

    def terms(self) -> Iterator[Term]:
        """Stored terms in the canonical deterministic order."""
        for alpha, channel in self._keys:
            yield Term(alpha, channel, self._terms[(alpha, channel)])

    def term_dict(self) -> dict:
        return dict(self._terms)

    def scalar_terms(self) -> dict:
        """Map multi-index -> coefficient; requires a scalar ambient (r = 1)."""
        if self.ambient.r != 1:
            raise UnsupportedProductError("scalar_terms on a vector-valued polynomial")
        return {alpha: c for (alpha, _), c in self._terms.items()}

    def coefficient(self, alpha: Iterable[int], channel: int = 0):
        c = self._terms.get((tuple(alpha), channel))
        if c is not None:
            return c
        return Fraction(0) if self.exact else complex(0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_scalar(self) -> bool:
        return self.ambient.r == 1

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(degree(alpha) for alpha, _ in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {degree(alpha) for alpha, _ in self._terms}
        return len(degs) <= 1

    def is_monomial(self) -> bool:
        """Single multi-index (any channel vector attached to it)."""
        return len({alpha for alpha, _ in self._terms}) == 1

    def support(self) -> list[MultiIndex]:
        seen = []
        last = None
        for alpha, _ in self._keys:
            if alpha != last:
                seen.append(alpha)
                last = alpha
        return seen

    def channel_vector(self, alpha: MultiIndex) -> list:
        """Coefficients of z^alpha across all channels as a length-r list."""
        zero = Fraction(0) if self.exact else complex(0)
        return [self._terms.get((alpha, c), zero) for c in range(self.ambient.r)]

    # ---------------------------------------------------------------- arithmetic

    def _check_compatible(self, other: "Polynomial", same_r: bool = True):
        if self.ambient.names != other.ambient.names:
            raise AmbientMismatchError(
                f"variables differ: {self.ambient.names} vs {other.ambient.names}"
            )
        if same_r and self.ambient.r != other.ambient.r:
            raise AmbientMismatchError(f"channel counts differ: {self.ambient.r} vs {other.ambient.r}")
        if self.exact != other.exact:
            raise CoefficientDomainError("cannot mix exact and float polynomials")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return Polynomial(self.ambient, out, exact=self.exact)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) - c
        return Polynomial(self.ambient, out, exact=self.exact)

    def __neg__(self):
        return Polynomial(self.ambient, {k: -c for k, c in self._terms.items()}, exact=self.exact)

    def scale(self, factor) -> "Polynomial":
        if not factor:
            return Polynomial.zero(self.ambient, exact=self.exact)
        return Polynomial(self.ambient, {k: c * factor for k, c in self._terms.items()}, exact=self.exact)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_compatible(other, same_r=False)
        if self.ambient.r > 1 and other.ambient.r > 1:
            raise UnsupportedProductError("cannot multiply two vector-valued polynomials")
        scalar, vector = (other, self) if self.ambient.r > 1 else (self, other)
        out: dict = {}
        for (alpha, _), ca in scalar._terms.items():
            for (beta, channel), cb in vector._terms.items():
                key = (index_add(alpha, beta), channel)
                out[key] = out.get(key, 0) + ca * cb
        return Polynomial(vector.ambient, out, exact=self.exact)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.ambient, Fraction(1) if self.exact else complex(1))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.exact == other.exact
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.ambient, self.exact, tuple((k, self._terms[k]) for k in self._keys)))

    # ---------------------------------------------------------------- calculus and grading

    def derivative(self, j: int) -> "Polynomial":
        """Formal partial derivative in variable j (0-based)."""
        if not 0 <= j < self.ambient.d:
            raise ValueError(f"variable index {j} out of range")
        out: dict = {}
        for (alpha, channel), c in self._terms.items():
            e = alpha[j]
            if e == 0:
                continue
            beta = alpha[:j] + (e - 1,) + alpha[j + 1 :]
            out[(beta, channel)] = out.get((beta, channel), 0) + c * e
        return Polynomial(self.ambient, out, exact=self.exact)

    def homogeneous_component(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("degree must be non-negative")
        out = {k: c for k, c in self._terms.items() if degree(k[0]) == n}
        return Polynomial(self.ambient, out, exact=self.exact)

    def homogeneous_components(self) -> Iterator[tuple[int, "Polynomial"]]:
        """Nonzero components (n, p_n) with sum_n p_n = p, ascending degree."""
        degs = sorted({degree(alpha) for alpha, _ in self._terms})
        for n in degs:
            yield n, self.homogeneous_component(n)

    # ---------------------------------------------------------------- substitution and conversion

    def substitute_linear(self, matrix) -> "Polynomial":
        """Return p(Az) for a d x d matrix A; channels are untouched.

        In the float domain a numerically singular A is rejected; in the
        exact domain invertibility is the caller's responsibility.
        """
        d = self.ambient.d
        rows = [list(row) for row in matrix]
        if len(rows) != d or any(len(row) != d for row in rows):
            raise ValueError(f"matrix must be {d}x{d}")
        if not self.exact:
            _check_nonsingular(rows)
        scalar_amb = self.ambient.scalar()
        one = Fraction(1) if self.exact else complex(1)
        forms = [
            Polynomial(scalar_amb, {(tuple(1 if k == j else 0 for k in range(d)), 0): rows[i][j] for j in range(d)}, exact=self.exact)
            for i in range(d)
        ]
        power_cache: dict[tuple[int, int], Polynomial] = {}

        def form_power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in power_cache:
                if e == 0:
                    power_cache[key] = Polynomial.constant(scalar_amb, one)
                else:
                    power_cache[key] = form_power(i, e - 1) * forms[i]
            return power_cache[key]

        out: dict = {}
        for (alpha, channel), c in self._terms.items():
            image = Polynomial.constant(scalar_amb, one)
            for i, e in enumerate(alpha):
                if e:
                    image = image * form_power(i, e)
            for (beta, _), cb in image._terms.items():
                key = (beta, channel)
                out[key] = out.get(key, 0) + c * cb
        return Polynomial(self.ambient, out, exact=self.exact)

    def to_float(self) -> "Polynomial":
        """Nearest-double coefficients; raises when a coefficient overflows."""
        if not self.exact:
            return self
        out = {}
        for key, c in self._terms.items():
            try:
                out[key] = complex(c) if isinstance(c, GaussianRational) else complex(float(c))
            except OverflowError as exc:
                raise FloatOverflowError(f"coefficient {c} does not fit in a double") from exc
        return Polynomial(self.ambient, out, exact=False)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"

    def __str__(self):
        return format_polynomial(self)


def _check_nonsingular(rows):
    """Gaussian elimination with partial pivoting; rejects tiny pivots."""
    d = len(rows)
    a = [[complex(x) for x in row] for row in rows]
    scale = max((abs(x) for row in a for x in row), default=0.0)
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    for col in range(d):
        pivot_row = max(range(col, d), key=lambda r: abs(a[r][col]))
        pivot = a[pivot_row][col]
        if abs(pivot) < 1e-13 * scale:
            raise SingularMatrixError("matrix is numerically singular")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        for r in range(col + 1, d):
            factor = a[r][col] / pivot
            for k in range(col, d):
                a[r][k] -= factor * a[col][k]


# -------------------------------------------------------------------- text grammar
#
# poly    := [sign] term (sign term)*
# term    := factor ('*'? factor)*
# factor  := coefficient | name ['^' int] | 'e' int
# coefficient := int ['/' int] | '(' rational [sign rational 'i'] ')'
#
# Channel suffixes e1..er select the channel (default channel 0).  The
# round trip parse(format(p)) == p is exact in the exact domain.

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise PolynomialSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ambient: Ambient):
        self.text = text
        self.ambient = ambient
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, message):
        raise PolynomialSyntaxError(message, self.peek()[2])

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.fail("empty polynomial")
        terms: dict = {}
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        while True:
            coeff, alpha, channel = self.parse_term()
            key = (alpha, channel)
            terms[key] = terms.get(key, 0) + sign * coeff
            kind, value, _ = self.peek()
            if kind is None:
                break
            if kind == "op" and value in "+-":
                self.take()
                sign = -1 if value == "-" else 1
            else:
                self.fail(f"expected '+' or '-', found {value!r}")
        return Polynomial(self.ambient, terms)

    def parse_term(self):
        coeff = Fraction(1)
        exps = [0] * self.ambient.d
        channel = None
        saw_factor = False
        while True:
            kind, value, start = self.peek()
            if kind == "op" and value == "*":
                self.take()
                kind, value, start = self.peek()
                if kind is None or (kind == "op" and value in "+-"):
                    self.fail("dangling '*'")
                continue
            if kind == "int":
                coeff = coeff * self.parse_rational()
            elif kind == "op" and value == "(":
                coeff = coeff * self.parse_complex_literal()
            elif kind == "name":
                self.take()
                if _CHANNEL_RE.match(value):
                    idx = int(value[1:])
                    if not 1 <= idx <= self.ambient.r:
                        raise PolynomialSyntaxError(
                            f"channel {value} out of range for r={self.ambient.r}", start
                        )
                    if channel is not None:
                        raise PolynomialSyntaxError("two channel markers in one term", start)
                    channel = idx - 1
                elif value in self.ambient.names:
                    i = self.ambient.names.index(value)
                    e = 1
                    kind2, value2, _ = self.peek()
                    if kind2 == "op" and value2 == "^":
                        self.take()
                        kind3, value3, start3 = self.take()
                        if kind3 != "int":
                            raise PolynomialSyntaxError("expected integer exponent", start3)
                        e = int(value3)
                    exps[i] += e
                else:
                    raise PolynomialSyntaxError(f"unknown variable {value!r}", start)
            else:
                break
            saw_factor = True
        if not saw_factor:
            self.fail("expected a term")
        return coeff, tuple(exps), channel if channel is not None else 0

    def parse_rational(self) -> Fraction:
        kind, value, start = self.take()
        if kind != "int":
            raise PolynomialSyntaxError("expected integer", start)
        num = int(value)
        kind2, value2, _ = self.peek()
        if kind2 == "op" and value2 == "/":
            self.take()
            kind3, value3, start3 = self.take()
            if kind3 != "int":
                raise PolynomialSyntaxError("expected denominator", start3)
            den = int(value3)
            if den == 0:
                raise PolynomialSyntaxError("zero denominator", start3)
            return Fraction(num, den)
        return Fraction(num)

    def parse_complex_literal(self):
        """'(' a ')' or '(' [a] [+-] b 'i' ')' with a, b rationals."""
        self.take()  # '('
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        first = sign * self.parse_rational()
        kind, value, start = self.peek()
        if kind == "name" and value == "i":
            self.take()
            result = GaussianRational(0, first)
        elif kind == "op" and value in "+-":
            self.take()
            imag_sign = -1 if value == "-" else 1
            imag = imag_sign * self.parse_rational()
            kind3, value3, start3 = self.take()
            if kind3 != "name" or value3 != "i":
                raise PolynomialSyntaxError("expected 'i' after imaginary part", start3)
            result = GaussianRational(first, imag)
        else:
            result = first
        kind4, value4, start4 = self.take()
        if kind4 != "op" or value4 != ")":
            raise PolynomialSyntaxError("expected ')'", start4)
        return result


def parse_polynomial(text: str, ambient: Ambient) -> Polynomial:
    """Parse the textual grammar; exact-domain coefficients only."""
    return _Parser(text, ambient).parse()


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_coefficient(c) -> str:
    if isinstance(c, Fraction):
        return _format_rational(c)
    if isinstance(c, GaussianRational):
        if c.real == 0:
            return f"({_format_rational(c.imag)}i)"
        sign = "+" if c.imag > 0 else "-"
        return f"({_format_rational(c.real)}{sign}{_format_rational(abs(c.imag))}i)"
    return repr(c)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form; parse(format(p)) == p exactly in the exact domain."""
    if p.is_zero():
        return "0"
    pieces = []
    for alpha, channel, c in p.terms():
        factors = []
        for name, e in zip(p.ambient.names, alpha):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if p.ambient.r > 1:
            factors.append(f"e{channel + 1}")
        negative = False
        coeff = c
        if isinstance(c, Fraction) and c < 0:
            negative, coeff = True, -c
        elif isinstance(c, GaussianRational) and (c.real < 0 or (c.real == 0 and c.imag < 0)):
            negative, coeff = True, -c
        if not factors:
            body = _format_coefficient(coeff)
        elif coeff == 1 and not isinstance(coeff, complex):
            body = "*".join(factors)
        else:
            body = "*".join([_format_coefficient(coeff)] + factors)
        pieces.append(("- " if negative else "+ ") + body)
    text = " ".join(pieces)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
