"""Polynomial norms: the coefficient l1 norm and the Drury-Arveson H2 norm.

A monomial z^alpha has squared H2 norm alpha! / |alpha|! and distinct
monomials are orthogonal; channels are orthonormal.  Everything is exact
over the rational domain.  The l1 norm of an exact polynomial is exact
whenever every coefficient has a rational absolute value (always true for
Fraction coefficients; for GaussianRationals when one part vanishes) and
falls back to a float otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import AmbientMismatchError
from .polyring import (
    MultiIndex,
    Polynomial,
    coeff_abs_exact,
    coeff_abs_sq,
    conjugate_coeff,
    degree,
)


@lru_cache(maxsize=None)
def monomial_h2_norm_sq(alpha: MultiIndex) -> Fraction:
    """alpha! / |alpha|! as an exact Fraction."""
    num = 1
    for e in alpha:
        num *= math.factorial(e)
    return Fraction(num, math.factorial(degree(alpha)))


def l1_norm(p: Polynomial):
    """Sum of |coefficient| over all terms and channels."""
    if not p.exact:
        return sum(abs(c) for _, _, c in p.terms()) if not p.is_zero() else 0.0
    total = Fraction(0)
    inexact = 0.0
    has_inexact = False
    for _, _, c in p.terms():
        a = coeff_abs_exact(c)
        if a is None:
            has_inexact = True
            inexact += abs(c)
        else:
            total += a
    if has_inexact:
        return float(total) + inexact
    return total


def h2_norm_sq(p: Polynomial):
    """Squared H2 norm; exact Fraction in the exact domain."""
    if p.exact:
        total = Fraction(0)
    else:
        total = 0.0
    for alpha, _, c in p.terms():
        w = monomial_h2_norm_sq(alpha)
        total = total + coeff_abs_sq(c) * (w if p.exact else float(w))
    return total


def h2_inner(p: Polynomial, q: Polynomial):
    """H2 inner product, linear in p and conjugate-linear in q."""
    if p.ambient != q.ambient:
        raise AmbientMismatchError("inner product requires a shared ambient")
    if p.exact != q.exact:
        raise AmbientMismatchError("inner product requires a shared coefficient domain")
    pt = p.term_dict()
    qt = q.term_dict()
    if len(qt) < len(pt):
        small, other, conj_small = qt, pt, True
    else:
        small, other, conj_small = pt, qt, False
    total = Fraction(0) if p.exact else complex(0)
    for key, c in small.items():
        oc = other.get(key)
        if oc is None:
            continue
        w = monomial_h2_norm_sq(key[0])
        if conj_small:
            contrib = oc * conjugate_coeff(c)
        else:
            contrib = c * conjugate_coeff(oc)
        total = total + contrib * (w if p.exact else float(w))
    return total


def h2_norm(p: Polynomial) -> float:
    return math.sqrt(float(h2_norm_sq(p)))
