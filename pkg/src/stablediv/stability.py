"""Constructive stable decompositions and a brute-force stability oracle.

A decomposition h = sum a_i f_i is *stable* when the pieces a_i f_i are
controlled by h: sum ||a_i f_i||^2 <= C ||h||^2 (H2 norm) or the l1
analogue sum ||a_i f_i|| <= C' ||h||.  This module implements the four
constructive routes that certify explicit constants:

* orthogonal gathering for orthonormal linear generators (C = 1),
* recursive channel splitting for monomial modules (C = 1),
* max-divisor bivariate division for equal-degree generators in two
  variables,
* minimal-term division for generators with dominant leading
  coefficients, including the diagonal rescaling that manufactures
  dominance for an arbitrary basis,

plus a least-squares oracle that computes the true minimal cost and the
true per-degree constants C_n = 1 / lambda_min(S S* restricted to the
degree-n piece of the module), where S is the block synthesis map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .division import BIVARIATE_STABLE, DOMINANT_MIN_TERM, DivisionResult, divide
from .errors import (
    InternalConsistencyError,
    MembershipError,
    PreconditionError,
)
from .gradedspace import monomial_norm, multiplication_matrix, poly_to_vec
from .groebner import GroebnerBasis, is_groebner_basis, monic
from .norms import h2_norm_sq, l1_norm
from .ordering import MonomialOrder, dominance_order, graded_lex, leading_term
from .polyring import (
    Polynomial,
    coeff_abs_exact,
    conjugate_coeff,
    exponents_of_degree,
    index_divides,
    index_sub,
)


@dataclass
class StableDecomposition:
    """A decomposition h = sum a_i f_i (+ r) together with its certified cost.

    ``generators`` is the list the quotients pair with; routines that
    reorder or internally reduce their input expose the actually used
    generating set here.
    """

    generators: list[Polynomial]
    quotients: list[Polynomial]
    remainder: Polynomial
    cost_sq: object | None  # sum ||a_i f_i||_{H2}^2, Fraction or float
    cost_l1: object | None  # sum ||a_i f_i||_{l1}
    certificate: str
    division: DivisionResult | None = None

    def reconstruct(self) -> Polynomial:
        total = self.remainder
        for a, f in zip(self.quotients, self.generators):
            total = total + a * f
        return total


@dataclass
class StabilityReport:
    """True per-degree stability constants measured by the oracle."""

    degrees: list[int]
    constants: list[float | None]
    eigen_min: list[float | None]
    ranks: list[int]
    growth_exponent: float | None
    envelope: list[float | None]


# --------------------------------------------------------------- linear generators


def orthonormal_linear_decompose(h: Polynomial, F) -> StableDecomposition:
    """Decompose h over H2-orthonormal linear generators with orthogonal parts.

    Rotates coordinates by the unitary completing the coefficient rows,
    gathers the monomials containing the first new variable, then the
    second, and so on, and rotates back.  The parts a_i f_i are pairwise
    orthogonal, so the cost equals ||h||^2.
    """
    gens = [f.to_float() if f.exact else f for f in F]
    if not gens:
        raise PreconditionError("need at least one generator")
    ambient = gens[0].ambient
    d, k = ambient.d, len(gens)
    if k > d:
        raise PreconditionError("more orthonormal linear generators than variables")
    rows = np.zeros((k, d), dtype=complex)
    for i, f in enumerate(gens):
        if f.ambient != ambient or f.ambient.r != 1:
            raise PreconditionError("generators must be scalar over one ambient")
        if f.is_zero() or not f.is_homogeneous() or f.total_degree() != 1:
            raise PreconditionError("generators must be homogeneous of degree 1")
        for alpha, _, c in f.terms():
            rows[i, alpha.index(1)] = complex(c)
    gram = rows @ rows.conj().T
    if np.max(np.abs(gram - np.eye(k))) > 1e-12:
        raise PreconditionError("generators are not orthonormal within 1e-12")

    # complete the rows to a unitary: the trailing right singular vectors
    # are orthonormal and orthogonal to the row space
    _, _, vh = np.linalg.svd(rows)
    unitary = np.concatenate([rows, vh[k:, :]], axis=0)
    residual = np.max(np.abs(unitary @ unitary.conj().T - np.eye(d)))
    if residual > 1e-10:
        raise InternalConsistencyError(f"unitary completion failed ({residual:.2e})")

    hf = h.to_float() if h.exact else h
    rotated = hf.substitute_linear(unitary.conj().T)

    residual_terms = dict(rotated.term_dict())
    scale = max((abs(c) for c in residual_terms.values()), default=0.0)
    tol = 1e-9 * max(1.0, scale)
    quotient_terms: list[dict] = [{} for _ in range(k)]
    for (alpha, channel), c in list(residual_terms.items()):
        for i in range(k):
            if alpha[i] > 0:
                beta = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
                quotient_terms[i][(beta, channel)] = c
                del residual_terms[(alpha, channel)]
                break
    leftover = max((abs(c) for c in residual_terms.values()), default=0.0)
    if leftover > tol:
        raise MembershipError(
            f"dividend is not in the module spanned by the generators (residual {leftover:.2e})"
        )

    quotients = [
        Polynomial(ambient, terms, exact=False).substitute_linear(unitary)
        for terms in quotient_terms
    ]
    cost = sum(float(h2_norm_sq(a * f)) for a, f in zip(quotients, gens))
    return StableDecomposition(
        generators=gens,
        quotients=quotients,
        remainder=Polynomial.zero(ambient, exact=False),
        cost_sq=cost,
        cost_l1=None,
        certificate="orthogonal-parts: sum ||a_i f_i||^2 = ||h||^2",
    )


# --------------------------------------------------------------- monomial modules


def _vec_inner(u, v):
    """Channel-vector inner product, conjugate-linear in v; exact."""
    total = Fraction(0)
    for a, b in zip(u, v):
        total = total + a * conjugate_coeff(b)
    return total


def _vec_norm_sq(u):
    return _vec_inner(u, u)


def monomial_module_decompose(h: Polynomial, F) -> StableDecomposition:
    """Decompose h over equal-degree monomial generators with cost <= ||h||^2.

    Generators sharing a multi-index are first orthogonalized across
    channels (unnormalized Gram-Schmidt, zero vectors dropped); the
    returned quotients pair with that reduced set.  The splitting then
    peels off, group by group, the projection of the matching terms of h
    onto the group's channel span.  Everything is exact.
    """
    gens = list(F)
    if not gens:
        raise PreconditionError("need at least one generator")
    ambient = gens[0].ambient
    if not h.exact or any(not f.exact for f in gens):
        raise PreconditionError("monomial splitting runs over the exact domain")
    degrees = set()
    groups: list[tuple] = []  # (alpha, [channel vectors])
    group_index: dict = {}
    for f in gens:
        if f.ambient != ambient:
            raise PreconditionError("generators must share one ambient")
        if f.is_zero() or not f.is_monomial():
            raise PreconditionError("generators must be nonzero monomials")
        alpha = f.support()[0]
        degrees.add(sum(alpha))
        xi = f.channel_vector(alpha)
        if alpha in group_index:
            groups[group_index[alpha]][1].append(xi)
        else:
            group_index[alpha] = len(groups)
            groups.append((alpha, [xi]))
    if len(degrees) != 1:
        raise PreconditionError(
            "generators must share one degree; equalize_degrees can pad lower-degree ones"
        )
    m = degrees.pop()
    if h.is_zero():
        return StableDecomposition([], [], h, Fraction(0), None, "monomial-split: C = 1")
    if not h.is_homogeneous() or h.total_degree() < m:
        raise PreconditionError("dividend must be homogeneous of degree >= the generator degree")

    # unnormalized Gram-Schmidt within each multi-index group
    reduced: list[tuple] = []  # (alpha, zeta)
    for alpha, vectors in groups:
        ortho: list = []
        for xi in vectors:
            zeta = list(xi)
            for prev in ortho:
                coef = _vec_inner(zeta, prev) / _vec_norm_sq(prev)
                zeta = [a - coef * b for a, b in zip(zeta, prev)]
            if any(zeta):
                ortho.append(zeta)
        reduced.extend((alpha, zeta) for zeta in ortho)

    scalar_amb = ambient.scalar()
    remaining = h
    used_alphas: list = []
    by_alpha: dict = {}
    for alpha, zeta in reduced:
        by_alpha.setdefault(alpha, []).append(zeta)
        if alpha not in used_alphas:
            used_alphas.append(alpha)

    out_quotients: dict = {}
    for alpha in used_alphas:
        zetas = by_alpha[alpha]
        peel: dict = {}
        a_terms: list[dict] = [{} for _ in zetas]
        for beta in remaining.support():
            if not index_divides(alpha, beta):
                continue
            eta = remaining.channel_vector(beta)
            rel = index_sub(beta, alpha)
            for j, zeta in enumerate(zetas):
                coef = _vec_inner(eta, zeta) / _vec_norm_sq(zeta)
                if coef:
                    a_terms[j][rel] = coef
                    for ch, z in enumerate(zeta):
                        if z:
                            key = (beta, ch)
                            peel[key] = peel.get(key, 0) + coef * z
        remaining = remaining - Polynomial(ambient, peel)
        for j, terms in enumerate(a_terms):
            out_quotients[(alpha, j)] = Polynomial.from_scalar_terms(scalar_amb, terms)

    if not remaining.is_zero():
        raise MembershipError("dividend is not in the monomial module")

    gen_polys = []
    quotients = []
    cost = Fraction(0)
    for alpha in used_alphas:
        for j, zeta in enumerate(by_alpha[alpha]):
            gen = Polynomial(ambient, {(alpha, ch): z for ch, z in enumerate(zeta) if z})
            a = out_quotients[(alpha, j)]
            gen_polys.append(gen)
            quotients.append(a)
            cost += h2_norm_sq(a * gen)
    return StableDecomposition(
        generators=gen_polys,
        quotients=quotients,
        remainder=Polynomial.zero(ambient),
        cost_sq=cost,
        cost_l1=None,
        certificate="monomial-split: sum ||a_i f_i||^2 <= ||h||^2 (C = 1)",
    )


def equalize_degrees(F, target: int | None = None) -> list[Polynomial]:
    """Replace each generator f of degree m < target by {z^gamma f : |gamma| = target - m}."""
    gens = list(F)
    if not gens:
        return []
    for f in gens:
        if f.is_zero() or not f.is_homogeneous():
            raise PreconditionError("equalize_degrees needs nonzero homogeneous generators")
    top = max(f.total_degree() for f in gens)
    if target is None:
        target = top
    if target < top:
        raise PreconditionError("target degree below the maximum generator degree")
    out = []
    for f in gens:
        gap = target - f.total_degree()
        if gap == 0:
            out.append(f)
            continue
        scalar_amb = f.ambient.scalar()
        for gamma in exponents_of_degree(f.ambient.d, gap):
            out.append(Polynomial.monomial(scalar_amb, gamma) * f)
    return out


# --------------------------------------------------------------- bivariate division


def bivariate_stable_divide(h: Polynomial, F) -> StableDecomposition:
    """Divide in two variables choosing the largest applicable divisor.

    Generators must be homogeneous of one common degree; they are sorted
    by decreasing leading term under graded lex before Algorithm I runs
    with the max-index divisor choice.  When F is a Groebner basis the
    remainder vanishes for ideal members and the recorded cost witnesses
    a degree-independent constant.
    """
    gens = list(F)
    if not gens:
        raise PreconditionError("need at least one generator")
    ambient = gens[0].ambient
    if ambient.d != 2 or ambient.r != 1:
        raise PreconditionError("bivariate division needs two variables and scalar generators")
    degs = {f.total_degree() for f in gens}
    if any(f.is_zero() or not f.is_homogeneous() for f in gens) or len(degs) != 1:
        raise PreconditionError("generators must be nonzero homogeneous of one common degree")
    order = graded_lex(ambient)
    gens.sort(key=lambda f: order.key(leading_term(f, order).index), reverse=True)
    lead_indices = [leading_term(f, order).index for f in gens]
    if len(set(lead_indices)) != len(lead_indices):
        raise PreconditionError("leading terms must be strictly decreasing")

    result = divide(h, gens, order, BIVARIATE_STABLE)
    cost = sum((h2_norm_sq(a * f) for a, f in zip(result.quotients, gens)), Fraction(0))
    return StableDecomposition(
        generators=gens,
        quotients=list(result.quotients),
        remainder=result.remainder,
        cost_sq=cost,
        cost_l1=None,
        certificate="bivariate max-divisor: sum ||a_i f_i||^2 <= C (||h||^2 + ||r||^2)",
        division=result,
    )


# --------------------------------------------------------------- dominant division


def dominance_rho(F, order: MonomialOrder) -> Fraction | None:
    """Largest tail-to-leading coefficient ratio, or None when >= 1.

    Each generator is normalized to a monic leading coefficient; the
    returned rho is max_j sum of |tail coefficients| and dominance holds
    iff rho < 1.  Exactness requires rationally-sized coefficients.
    """
    gens = list(F)
    if not gens:
        raise PreconditionError("need at least one generator")
    rho = Fraction(0)
    for f in gens:
        if f.is_zero():
            raise PreconditionError("zero generator")
        lt = leading_term(f, order)
        tail_sum = Fraction(0)
        for alpha, _, c in f.terms():
            if alpha == lt.index:
                continue
            a = coeff_abs_exact(c / lt.coefficient)
            if a is None:
                raise PreconditionError("dominance needs coefficients with rational absolute value")
            tail_sum += a
        rho = max(rho, tail_sum)
    return rho if rho < 1 else None


def dominant_divide(h: Polynomial, F, order: MonomialOrder) -> StableDecomposition:
    """Divide by generators with dominant leading terms; certifies l1 bounds.

    Runs Algorithm II on the minimal reducible term against the monic
    normalizations g_j = f_j / lc_j and asserts, exactly, that
    ||r||_1 <= ||h||_1 and sum ||b_j||_1 <= (1 - rho)^{-1} ||h||_1 for
    the monic quotients b_j.  The returned quotients a_j = b_j / lc_j
    pair with the generators as given.
    """
    gens = list(F)
    rho = dominance_rho(gens, order)
    if rho is None:
        raise PreconditionError("generators do not have dominant leading coefficients")
    lead_coeffs = [leading_term(f, order).coefficient for f in gens]
    monic_gens = [f.scale(1 / c) for f, c in zip(gens, lead_coeffs)]
    result = divide(h, monic_gens, order, DOMINANT_MIN_TERM)

    h_l1 = l1_norm(h)
    r_l1 = l1_norm(result.remainder)
    q_l1 = sum((l1_norm(b) for b in result.quotients), Fraction(0))
    if not (r_l1 <= h_l1):
        raise InternalConsistencyError("remainder l1 bound failed")
    if not (q_l1 * (1 - rho) <= h_l1):
        raise InternalConsistencyError("quotient l1 bound failed")

    quotients = [b.scale(1 / c) for b, c in zip(result.quotients, lead_coeffs)]
    cost = sum((l1_norm(a * f) for a, f in zip(quotients, gens)), Fraction(0))
    return StableDecomposition(
        generators=gens,
        quotients=quotients,
        remainder=result.remainder,
        cost_sq=None,
        cost_l1=cost,
        certificate=f"dominant-min-term: sum ||b_j||_1 <= (1-rho)^-1 ||h||_1, rho = {rho}",
        division=result,
    )


# --------------------------------------------------------------- diagonal rescaling


def dominance_rescaling(F) -> list[int]:
    """Positive integer scales making the rescaled basis dominant.

    With N the maximal degree, M the dimension of polynomials of degree
    at most N and K a rational ceiling of the largest |coefficient|, the
    scales are s_1 = M (K + 1) and s_{j+1} = (s_1 ... s_j)^{N+1}.  The
    guarantee holds under the pure lex order with the last variable
    highest (``dominance_order``); an all-monomial basis needs no
    rescaling and gets all ones.
    """
    gens = list(F)
    if not gens:
        raise PreconditionError("need at least one generator")
    ambient = gens[0].ambient
    for f in gens:
        if f.is_zero():
            raise PreconditionError("zero generator")
        if f.ambient.names != ambient.names:
            raise PreconditionError("generators must share one ambient")
    d = ambient.d
    if all(f.is_monomial() for f in gens):
        return [1] * d
    big_n = max(f.total_degree() for f in gens)
    dim_m = math.comb(big_n + d, d)
    k_bound = 0
    for f in gens:
        for _, _, c in f.terms():
            a = coeff_abs_exact(c)
            if a is None:
                a = Fraction(abs(c.real)) + Fraction(abs(c.imag))  # safe upper bound
            k_bound = max(k_bound, math.ceil(a))
    scales = [dim_m * (k_bound + 1)]
    prod = scales[0]
    for _ in range(d - 1):
        nxt = prod ** (big_n + 1)
        scales.append(nxt)
        prod *= nxt
    order = dominance_order(ambient)
    rescaled = [rescale_polynomial(f, scales) for f in gens]
    if dominance_rho(rescaled, order) is None:
        raise InternalConsistencyError("rescaled basis failed the dominance check")
    return scales


def rescale_polynomial(p: Polynomial, scales) -> Polynomial:
    """p(s_1 z_1, ..., s_d z_d), computed exactly without full substitution."""
    terms = {}
    for alpha, channel, c in p.terms():
        factor = 1
        for s, e in zip(scales, alpha):
            factor *= s**e
        terms[(alpha, channel)] = c * factor
    return Polynomial(p.ambient, terms, exact=p.exact)


def rescale_ideal(gb: GroebnerBasis, scales) -> GroebnerBasis:
    """Diagonal change of variables; the result is checked to stay a Groebner basis."""
    if any(not s for s in scales):
        raise PreconditionError("scales must be nonzero")
    rescaled = [monic(rescale_polynomial(f, scales), gb.order) for f in gb.generators]
    if not is_groebner_basis(rescaled, gb.order):
        raise InternalConsistencyError("rescaling broke the Groebner property")
    return GroebnerBasis(tuple(rescaled), gb.order, reduced=gb.reduced)


# --------------------------------------------------------------- the oracle


def _synthesis_blocks(F, n: int):
    """Per-generator (Q, R, exponents) for the degree-n synthesis map."""
    blocks = []
    for i, f in enumerate(F):
        m = f.total_degree()
        if m > n:
            continue
        mat = multiplication_matrix(f, n - m)
        q, r = np.linalg.qr(mat)
        blocks.append((i, q, r, exponents_of_degree(f.ambient.d, n - m)))
    return blocks


def _validate_oracle_input(F) -> list[Polynomial]:
    gens = [f.to_float() if f.exact else f for f in F]
    if not gens:
        raise PreconditionError("need at least one generator")
    ambient = gens[0].ambient
    for f in gens:
        if f.is_zero() or not f.is_homogeneous():
            raise PreconditionError("generators must be nonzero and homogeneous")
        if f.ambient != ambient:
            raise PreconditionError("generators must share one ambient")
    return gens


def min_cost_decomposition(h: Polynomial, F, n: int) -> StableDecomposition:
    """Minimize sum ||a_i f_i||^2 subject to sum a_i f_i = h, by least squares.

    The synthesis map concatenates orthonormal bases of the subspaces
    f_i H_{n - m_i}, so the minimal-norm preimage of h is exactly the
    minimizer of the cost.  h must be homogeneous of degree n and lie in
    the module within relative tolerance 1e-9.
    """
    gens = _validate_oracle_input(F)
    ambient = gens[0].ambient
    scalar_amb = ambient.scalar()
    hf = h.to_float() if h.exact else h
    if not hf.is_homogeneous() or (not hf.is_zero() and hf.total_degree() != n):
        raise PreconditionError("dividend must be homogeneous of the stated degree")
    blocks = _synthesis_blocks(gens, n)
    target = poly_to_vec(hf, n)
    scale = float(np.linalg.norm(target))
    if not blocks:
        if scale > 0.0:
            raise MembershipError("no generator reaches the requested degree")
        return StableDecomposition(
            generators=gens,
            quotients=[Polynomial.zero(scalar_amb, exact=False) for _ in gens],
            remainder=Polynomial.zero(ambient, exact=False),
            cost_sq=0.0,
            cost_l1=None,
            certificate="minimal-norm oracle",
        )
    s_mat = np.concatenate([q for _, q, _, _ in blocks], axis=1)
    x, *_ = np.linalg.lstsq(s_mat, target, rcond=None)
    residual = float(np.linalg.norm(s_mat @ x - target))
    if residual > 1e-9 * max(scale, 1e-300):
        raise MembershipError(
            f"dividend is outside the degree-{n} module piece (residual {residual:.2e})"
        )

    quotients = [Polynomial.zero(scalar_amb, exact=False) for _ in gens]
    offset = 0
    for i, q, r, betas in blocks:
        width = q.shape[1]
        coords = x[offset : offset + width]
        offset += width
        mult_coeffs = np.linalg.solve(r, coords)
        terms = {}
        for beta, c in zip(betas, mult_coeffs):
            z = complex(c) / monomial_norm(beta)
            if z != 0:
                terms[(beta, 0)] = z
        quotients[i] = Polynomial(scalar_amb, terms, exact=False)
    cost = float(np.vdot(x, x).real)
    return StableDecomposition(
        generators=gens,
        quotients=quotients,
        remainder=Polynomial.zero(ambient, exact=False),
        cost_sq=cost,
        cost_l1=None,
        certificate="minimal-norm oracle",
    )


def stability_constant_scan(F, degrees, rank_tol: float = 1e-9) -> StabilityReport:
    """True constants C_n = 1 / smallest retained eigenvalue of S S* per degree.

    Eigenvalues below rank_tol times the largest are treated as rank
    deficiency and excluded.  Degrees with an empty module piece report
    None.  The growth exponent is the log-log slope fitted over the top
    half of the degrees that produced a constant.
    """
    gens = _validate_oracle_input(F)
    degrees = list(degrees)
    constants: list[float | None] = []
    eig_min: list[float | None] = []
    ranks: list[int] = []
    for n in degrees:
        blocks = _synthesis_blocks(gens, n)
        if not blocks:
            constants.append(None)
            eig_min.append(None)
            ranks.append(0)
            continue
        s_mat = np.concatenate([q for _, q, _, _ in blocks], axis=1)
        sv = np.linalg.svd(s_mat, compute_uv=False)
        eigs = sv * sv
        top = float(eigs[0]) if eigs.size else 0.0
        kept = eigs[eigs > rank_tol * top] if top > 0 else eigs[:0]
        if kept.size == 0:
            constants.append(None)
            eig_min.append(None)
            ranks.append(0)
            continue
        lam = float(kept[-1])
        constants.append(1.0 / lam)
        eig_min.append(lam)
        ranks.append(int(kept.size))

    present = [(n, c) for n, c in zip(degrees, constants) if c is not None and n > 0]
    exponent = None
    if len(present) >= 4:
        top_half = present[len(present) // 2 :]
        xs = np.log([n for n, _ in top_half])
        ys = np.log([c for _, c in top_half])
        exponent = float(np.polyfit(xs, ys, 1)[0])

    envelope: list[float | None] = []
    best = None
    for c in constants:
        if c is not None:
            best = c if best is None else max(best, c)
        envelope.append(best)
    return StabilityReport(degrees, constants, eig_min, ranks, exponent, envelope)
