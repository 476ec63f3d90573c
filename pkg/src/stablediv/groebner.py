"""Buchberger's algorithm and Groebner-basis-derived ideal data.

The basis computation uses the normal pair-selection strategy (smallest
lcm first) together with the two classical pair-skipping criteria, then
returns the reduced basis: monic generators, tails fully reduced, sorted
with the largest leading term first.  Derived data covers normal forms,
standard monomials, the zero-dimensionality test and the dimension read
off the Hilbert function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .division import CLO_DEFAULT, divide
from .errors import (
    PreconditionError,
    WindowTooSmallError,
    ZeroDivisorError,
)
from .ordering import MonomialOrder, leading_term
from .polyring import (
    MultiIndex,
    Polynomial,
    degree,
    exponents_of_degree,
    index_add,
    index_divides,
    index_lcm,
    index_sub,
)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = False

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    lt = leading_term(p, order)
    return p.scale(1 / lt.coefficient)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """S(f, g) = (lcm/LT(f)) f - (lcm/LT(g)) g; the leading terms cancel."""
    if f.is_zero() or g.is_zero():
        raise ZeroDivisorError("S-polynomial of the zero polynomial")
    lt_f = leading_term(f, order)
    lt_g = leading_term(g, order)
    lcm = index_lcm(lt_f.index, lt_g.index)
    mf = Polynomial.monomial(f.ambient, index_sub(lcm, lt_f.index), 1 / lt_f.coefficient)
    mg = Polynomial.monomial(g.ambient, index_sub(lcm, lt_g.index), 1 / lt_g.coefficient)
    return mf * f - mg * g


def _remainder(h: Polynomial, basis: list[Polynomial], order: MonomialOrder) -> Polynomial:
    if not basis:
        return h
    return divide(h, basis, order, CLO_DEFAULT).remainder


def buchberger(F, order: MonomialOrder) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by F."""
    gens = [f for f in F]
    if not gens:
        raise PreconditionError("buchberger needs at least one generator")
    for f in gens:
        if f.is_zero():
            raise ZeroDivisorError("zero generator")
        if f.ambient.r != 1:
            raise PreconditionError("Groebner bases are computed for scalar ideals")

    g: list[Polynomial] = [monic(f, order) for f in gens]
    lead: list[MultiIndex] = [leading_term(f, order).index for f in g]
    pairs = {(i, j) for i in range(len(g)) for j in range(i + 1, len(g))}

    def pair_rank(pair):
        lcm = index_lcm(lead[pair[0]], lead[pair[1]])
        return (degree(lcm), order.key(lcm))

    while pairs:
        i, j = min(pairs, key=pair_rank)
        pairs.discard((i, j))
        lcm = index_lcm(lead[i], lead[j])
        # first criterion: coprime leading monomials
        if lcm == index_add(lead[i], lead[j]):
            continue
        # chain criterion
        skip = False
        for k in range(len(g)):
            if k in (i, j):
                continue
            if index_divides(lead[k], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        rem = _remainder(s_polynomial(g[i], g[j], order), g, order)
        if rem.is_zero():
            continue
        rem = monic(rem, order)
        new = len(g)
        g.append(rem)
        lead.append(leading_term(rem, order).index)
        pairs.update((i2, new) for i2 in range(new))

    # minimalize: drop generators whose leading term another one divides
    keep: list[int] = []
    for i in range(len(g)):
        if any(k != i and index_divides(lead[k], lead[i]) for k in range(len(g)) if (k in keep or k > i)):
            continue
        keep.append(i)
    minimal = [g[i] for i in keep]

    # interreduce tails
    reduced: list[Polynomial] = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(monic(_remainder(f, others, order), order))
    reduced.sort(key=lambda f: order.key(leading_term(f, order).index), reverse=True)
    return GroebnerBasis(tuple(reduced), order, reduced=True)


def is_groebner_basis(F, order: MonomialOrder) -> bool:
    """Brute-force Buchberger criterion: every S-pair reduces to zero."""
    gens = list(F)
    if not gens:
        return True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], order)
            if s.is_zero():
                continue
            if not _remainder(s, gens, order).is_zero():
                return False
    return True


def normal_form(h: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of h modulo the basis; zero iff h lies in the ideal."""
    return _remainder(h, list(gb.generators), gb.order)


def _leading_indices(gb: GroebnerBasis) -> list[MultiIndex]:
    return [leading_term(f, gb.order).index for f in gb.generators]


def _require_homogeneous(gb: GroebnerBasis):
    for f in gb.generators:
        if not f.is_homogeneous():
            raise PreconditionError("graded theory needs homogeneous generators")


def standard_monomials(gb: GroebnerBasis, n: int) -> list[MultiIndex]:
    """Degree-n monomials outside the leading-term ideal.

    Their count is the dimension of the degree-n graded piece of the
    quotient by the ideal.
    """
    if n < 0:
        raise PreconditionError("degree must be non-negative")
    _require_homogeneous(gb)
    if gb.generators:
        d = gb.generators[0].ambient.d
    else:
        d = gb.order.d
    lead = _leading_indices(gb)
    out = [
        alpha
        for alpha in exponents_of_degree(d, n)
        if not any(index_divides(lt, alpha) for lt in lead)
    ]
    out.sort(key=gb.order.key, reverse=True)
    return out


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """True iff the variety is finite: every variable has a pure power among the leading terms."""
    if not gb.generators:
        return False
    lead = _leading_indices(gb)
    if any(degree(lt) == 0 for lt in lead):
        return True  # unit ideal, empty variety
    d = gb.generators[0].ambient.d
    for i in range(d):
        if not any(lt[i] > 0 and all(e == 0 for k, e in enumerate(lt) if k != i) for lt in lead):
            return False
    return True


def hilbert_series_values(gb: GroebnerBasis, degrees) -> list[int]:
    """dim of the degree-n quotient pieces, i.e. counts of standard monomials."""
    return [len(standard_monomials(gb, n)) for n in degrees]


def hilbert_dimension(gb: GroebnerBasis) -> int:
    """deg(Hilbert polynomial) + 1; 0 when the Hilbert function is eventually zero.

    Samples the quotient dimensions on a window past the generator
    degrees and reads the polynomial degree off the finite-difference
    table.  A window on which the function is not yet polynomial raises
    WindowTooSmallError with a suggested larger start.
    """
    _require_homogeneous(gb)
    d = gb.generators[0].ambient.d if gb.generators else gb.order.d
    max_deg = max((f.total_degree() for f in gb.generators), default=0)
    n0 = max_deg + d
    window = list(range(n0, n0 + d + 3))
    values = [Fraction(v) for v in hilbert_series_values(gb, window)]
    row = values
    k = 0
    while True:
        if all(v == 0 for v in row):
            return k  # polynomial degree is k - 1, dimension k; k = 0 means HP == 0
        if len(row) <= 1:
            raise WindowTooSmallError(
                f"Hilbert samples on degrees {window} are not polynomial; retry from {n0 + d + 3}",
                n0 + d + 3,
            )
        row = [b - a for a, b in zip(row, row[1:])]
        k += 1
