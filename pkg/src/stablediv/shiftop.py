"""Truncated multiplication-operator matrices on graded pieces of H2 tensor C^r.

The coordinate multiplication operators Z_i map the degree-n piece into
degree n+1; in the orthonormalized monomial basis their adjoints are
plain conjugate transposes, the cross-commutators [Z_i, Z_j*] are block
diagonal over degrees, and compressions to a graded submodule M and its
complement are computed from per-degree frames.  This module packages
those matrices together with the diagnostics used to test decay of the
commutators (operator norms, Schatten partial sums) and the coupling
norms ||P_n Z_j* (E_{n+1} - P_{n+1})||, plus the passage from linear
vector-valued generators to quadratic scalar ones in extra variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .gradedspace import (
    ModuleFrame,
    basis_positions,
    graded_basis,
    graded_dim,
    module_frame,
    monomial_norm,
    multiplication_matrix,
    orthonormal_columns,
    poly_to_vec,
)
from .polyring import Ambient, Polynomial, exponents_of_degree

__all__ = [
    "GradedBlocks",
    "shift_blocks",
    "derivative_blocks",
    "module_frame",
    "ModuleFrame",
    "CommutatorReport",
    "commutator_report",
    "CouplingReport",
    "adjoint_coupling_report",
    "linear_to_quadratic",
    "quadratic_ambient",
    "embedding_blocks",
    "verify_embedding",
    "verify_reducing",
    "compression_identity_residual",
    "quadratic_reduction_report",
]


@dataclass
class GradedBlocks:
    """Per-degree dense matrices of a graded operator.

    ``blocks[n]`` maps the degree-n piece into degree ``n + degree_shift``.
    """

    blocks: dict[int, np.ndarray]
    degree_shift: int

    def __getitem__(self, n: int) -> np.ndarray:
        return self.blocks[n]


def shift_blocks(d: int, r: int, i: int, max_degree: int) -> GradedBlocks:
    """Matrices of multiplication by z_i (0-based) between orthonormalized pieces."""
    if not 0 <= i < d:
        raise PreconditionError(f"variable index {i} out of range for d={d}")
    ambient = Ambient.default(d, r)
    blocks = {}
    for n in range(max_degree):
        src = graded_basis(ambient, n)
        tgt_pos = basis_positions(ambient, n + 1)
        out = np.zeros((len(tgt_pos), len(src)), dtype=complex)
        for col, (alpha, channel) in enumerate(src):
            beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :]
            out[tgt_pos[(beta, channel)], col] = math.sqrt((alpha[i] + 1) / (n + 1))
        blocks[n] = out
    return GradedBlocks(blocks, 1)


def derivative_blocks(d: int, r: int, j: int, max_degree: int) -> GradedBlocks:
    """Matrices of d/dz_j computed through exact polynomial differentiation.

    Independent of the shift matrices; used to cross-check the adjoint
    identity Z_j* = (n+1)^{-1} d/dz_j on the degree-(n+1) piece.
    """
    ambient = Ambient.default(d, r)
    blocks = {}
    for n in range(1, max_degree + 1):
        src = graded_basis(ambient, n)
        cols = []
        for alpha, channel in src:
            mono = Polynomial.monomial(ambient, alpha, channel=channel)
            dp = mono.derivative(j)
            cols.append(poly_to_vec(dp.to_float(), n - 1) / monomial_norm(alpha))
        blocks[n] = np.stack(cols, axis=1)
    return GradedBlocks(blocks, -1)


def _compress(blocks: GradedBlocks, frames: dict[int, np.ndarray]) -> GradedBlocks:
    out = {}
    for n, mat in blocks.blocks.items():
        m = n + blocks.degree_shift
        if n in frames and m in frames:
            out[n] = frames[m].conj().T @ mat @ frames[n]
    return GradedBlocks(out, blocks.degree_shift)


def _commutator_block(blocks: GradedBlocks, other: GradedBlocks, n: int) -> np.ndarray | None:
    """[B_i, B_j*] on the degree-n piece: B_i(n-1) B_j(n-1)* - B_j(n)* B_i(n)."""
    first = None
    if n - 1 in blocks.blocks and n - 1 in other.blocks:
        first = blocks.blocks[n - 1] @ other.blocks[n - 1].conj().T
    second = None
    if n in blocks.blocks and n in other.blocks:
        second = other.blocks[n].conj().T @ blocks.blocks[n]
    if first is None and second is None:
        return None
    if first is None:
        return -second
    if second is None:
        return first
    return first - second


@dataclass
class CommutatorReport:
    degrees: list[int]
    full_norms: list[float]
    module_norms: list[float | None]
    quotient_norms: list[float | None]
    schatten_exponent: float
    quotient_schatten_partial: list[float]
    tail_ratios: list[float | None]


def commutator_report(
    frame: ModuleFrame, i: int, j: int, max_degree: int, p: float = 2.0
) -> CommutatorReport:
    """Per-degree norms of [Z_i, Z_j*] and of its compressions to M and M-perp.

    Schatten partial sums and tail ratios are reported for the
    quotient-side commutators; no convergence claim is attached to the
    truncated sums.
    """
    if p <= 0:
        raise PreconditionError("Schatten exponent must be positive")
    ambient = frame.ambient
    z_i = shift_blocks(ambient.d, ambient.r, i, max_degree)
    z_j = shift_blocks(ambient.d, ambient.r, j, max_degree)
    a_i, a_j = _compress(z_i, frame.bases), _compress(z_j, frame.bases)
    b_i, b_j = _compress(z_i, frame.complements), _compress(z_j, frame.complements)

    degrees = list(range(max_degree))
    full_norms: list[float] = []
    module_norms: list[float | None] = []
    quotient_norms: list[float | None] = []
    partials: list[float] = []
    ratios: list[float | None] = []
    running = 0.0
    prev_block = None
    for n in degrees:
        full = _commutator_block(z_i, z_j, n)
        full_norms.append(float(np.linalg.norm(full, 2)) if full is not None and full.size else 0.0)
        for blocks_pair, sink in (((a_i, a_j), module_norms), ((b_i, b_j), quotient_norms)):
            block = _commutator_block(blocks_pair[0], blocks_pair[1], n)
            sink.append(float(np.linalg.norm(block, 2)) if block is not None and block.size else None)
        bq = _commutator_block(b_i, b_j, n)
        block_sum = 0.0
        if bq is not None and bq.size:
            sv = np.linalg.svd(bq, compute_uv=False)
            block_sum = float(np.sum(sv**p))
        running += block_sum
        partials.append(running)
        ratios.append(block_sum / prev_block if prev_block else None)
        prev_block = block_sum
    return CommutatorReport(
        degrees, full_norms, module_norms, quotient_norms, p, partials, ratios
    )


@dataclass
class CouplingReport:
    """Norms ||P_n Z_j* (E_{n+1} - P_{n+1})|| and the scaled constants.

    P_n projects the degree-n piece onto the module *complement* and
    E_{n+1} - P_{n+1} onto the module, so the value measures how much
    Z_j* leaks from the module into its complement one degree down.
    For a module with a stable generating set the values decay like
    (n+1)^{-1/2}, i.e. the scaled values stay bounded.
    """

    degrees: list[int]
    values: list[float]
    scaled: list[float]  # value * sqrt(n + 1)
    constant: float  # max of scaled values
    top_half_ratio: float | None  # max/min of nonzero scaled values over the top half


def adjoint_coupling_report(
    frame: ModuleFrame, j: int, max_degree: int, zero_floor: float = 1e-12
) -> CouplingReport:
    """How strongly Z_j* maps each module piece into the complement below it.

    A top-half ratio of None means every value there sits below
    zero_floor (the complement is exhausted, e.g. for an eventually-full
    ideal), which counts as a trivially stable constant.
    """
    ambient = frame.ambient
    z_j = shift_blocks(ambient.d, ambient.r, j, max_degree)
    degrees = list(range(max_degree))
    values = []
    for n in degrees:
        comp_n = frame.complements[n]
        q_next = frame.bases[n + 1]
        if comp_n.shape[1] == 0 or q_next.shape[1] == 0:
            values.append(0.0)
            continue
        mat = comp_n.conj().T @ z_j.blocks[n].conj().T @ q_next
        values.append(float(np.linalg.norm(mat, 2)))
    scaled = [v * math.sqrt(n + 1) for n, v in zip(degrees, values)]
    constant = max(scaled) if scaled else 0.0
    top = [s for s in scaled[len(scaled) // 2 :] if s > zero_floor]
    ratio = (max(top) / min(top)) if top else None
    return CouplingReport(degrees, values, scaled, constant, ratio)


# ------------------------------------------------------- linear-to-quadratic passage


def quadratic_ambient(ambient: Ambient) -> Ambient:
    """Scalar ambient in d + r variables: the z names plus y1..yr."""
    y_names = tuple(f"y{j + 1}" for j in range(ambient.r))
    if set(y_names) & set(ambient.names):
        raise PreconditionError("variable names collide with the y1..yr block")
    return Ambient(ambient.names + y_names, 1)


def linear_to_quadratic(F) -> list[Polynomial]:
    """Re-index linear vector-valued generators as quadratic scalar ones.

    sum a_ij z_i (x) v_j becomes sum a_ij z_i y_j in d + r scalar
    variables; the coefficient tensor is copied exactly.
    """
    gens = list(F)
    if not gens:
        raise PreconditionError("need at least one generator")
    ambient = gens[0].ambient
    target = quadratic_ambient(ambient)
    d = ambient.d
    out = []
    for f in gens:
        if f.ambient != ambient:
            raise PreconditionError("generators must share one ambient")
        if f.is_zero() or not f.is_homogeneous() or f.total_degree() != 1:
            raise PreconditionError("generators must be homogeneous of degree 1")
        terms = {}
        for alpha, channel, c in f.terms():
            exps = alpha + tuple(1 if t == channel else 0 for t in range(ambient.r))
            terms[(exps, 0)] = c
        out.append(Polynomial(target, terms, exact=f.exact))
    return out


def embedding_blocks(d: int, r: int, max_degree: int) -> GradedBlocks:
    """The graded isometry sending z^alpha (x) v_j to sqrt(1+|alpha|) z^alpha y_j.

    In orthonormalized coordinates each source basis vector maps to the
    target basis vector of the monomial z^alpha y_j one degree up, so the
    blocks are 0/1 matrices with orthonormal columns.
    """
    src_amb = Ambient.default(d, r)
    tgt_amb = quadratic_ambient(src_amb)
    blocks = {}
    for n in range(max_degree + 1):
        src = graded_basis(src_amb, n)
        tgt_pos = basis_positions(tgt_amb, n + 1)
        out = np.zeros((len(tgt_pos), len(src)), dtype=complex)
        for col, (alpha, channel) in enumerate(src):
            exps = alpha + tuple(1 if t == channel else 0 for t in range(r))
            out[tgt_pos[(exps, 0)], col] = 1.0
        blocks[n] = out
    return GradedBlocks(blocks, 1)


def verify_embedding(d: int, r: int, max_degree: int) -> dict:
    """Residuals of the isometry property and of the intertwining identity.

    Checks, on every degree n < max_degree, that U is isometric and that
    U* Z_i U = sqrt((n+1)/(n+2)) S_i where Z_i acts on the scalar
    (d+r)-variable space and S_i on the vector-valued d-variable space.
    """
    u = embedding_blocks(d, r, max_degree)
    iso = 0.0
    for n in range(max_degree + 1):
        block = u.blocks[n]
        iso = max(iso, float(np.max(np.abs(block.conj().T @ block - np.eye(block.shape[1])))))
    inter = 0.0
    for i in range(d):
        z_i = shift_blocks(d + r, 1, i, max_degree + 2)
        s_i = shift_blocks(d, r, i, max_degree)
        for n in range(max_degree):
            lhs = u.blocks[n + 1].conj().T @ z_i.blocks[n + 1] @ u.blocks[n]
            rhs = math.sqrt((n + 1) / (n + 2)) * s_i.blocks[n]
            inter = max(inter, float(np.max(np.abs(lhs - rhs))))
    return {"isometry_residual": iso, "intertwine_residual": inter}


def _pure_z_frames(quadratic_gens, d_z: int, max_degree: int, rel_tol: float = 1e-9):
    """Per-degree orthonormal bases of span{z^gamma g_m}, multipliers in the first d_z variables only."""
    amb = quadratic_gens[0].ambient
    floated = [g.to_float() if g.exact else g for g in quadratic_gens]
    frames = {}
    for q in range(max_degree + 1):
        tgt_pos = basis_positions(amb, q)
        cols = []
        for gf in floated:
            m = gf.total_degree()
            if m > q:
                continue
            for gamma in exponents_of_degree(d_z, q - m):
                full_gamma = gamma + (0,) * (amb.d - d_z)
                col = np.zeros(len(tgt_pos), dtype=complex)
                wb = monomial_norm(full_gamma)
                for alpha, _, c in gf.terms():
                    target = tuple(a + b for a, b in zip(alpha, full_gamma))
                    col[tgt_pos[(target, 0)]] += complex(c) * monomial_norm(target) / wb
                cols.append(col)
        dim = graded_dim(amb, q)
        if cols:
            frames[q] = orthonormal_columns(np.stack(cols, axis=1), rel_tol)
        else:
            frames[q] = np.zeros((dim, 0), dtype=complex)
    return frames


def verify_reducing(F, max_degree: int, tol: float = 1e-10) -> tuple[bool, float]:
    """Check that multiplication by each z_i preserves both P and its complement in N.

    N is the full module generated by the quadratic lifts; P keeps only
    z-multipliers.  Returns (all residuals below tol, max residual) over
    interior degrees.
    """
    gens = list(F)
    quad = linear_to_quadratic(gens)
    amb = quad[0].ambient
    d = gens[0].ambient.d
    n_frame = module_frame(amb, quad, max_degree)
    p_frames = _pure_z_frames(quad, d, max_degree)
    shifts = [shift_blocks(amb.d, 1, i, max_degree) for i in range(d)]
    worst = 0.0
    for q in range(2, max_degree):
        p_q, p_next = p_frames[q], p_frames[q + 1]
        n_q = n_frame.bases[q]
        # complement of P inside N
        if n_q.shape[1]:
            resid_cols = n_q - p_q @ (p_q.conj().T @ n_q)
            q_q = orthonormal_columns(resid_cols, 1e-9)
        else:
            q_q = np.zeros((n_q.shape[0], 0), dtype=complex)
        for z_i in shifts:
            if p_q.shape[1]:
                image = z_i.blocks[q] @ p_q
                out_of_p = image - p_next @ (p_next.conj().T @ image)
                worst = max(worst, float(np.linalg.norm(out_of_p, 2)))
            if q_q.shape[1] and p_next.shape[1]:
                image = z_i.blocks[q] @ q_q
                into_p = p_next.conj().T @ image
                worst = max(worst, float(np.linalg.norm(into_p, 2)))
    return worst <= tol, worst


def compression_identity_residual(F, max_degree: int) -> float:
    """Residual of D U* B_i U = T_i on interior degrees 2 <= n <= max_degree - 2.

    T_i compresses the vector-valued shift to the module generated by F;
    B_i compresses the scalar shift (in d + r variables) to the pure-z
    submodule of the quadratic lift; D multiplies degree n by
    sqrt(n+1)/sqrt(n).
    """
    gens = list(F)
    ambient = gens[0].ambient
    d, r = ambient.d, ambient.r
    quad = linear_to_quadratic(gens)
    m_frame = module_frame(ambient, gens, max_degree)
    p_frames = _pure_z_frames(quad, d, max_degree + 1)
    u = embedding_blocks(d, r, max_degree)
    worst = 0.0
    for i in range(d):
        s_i = shift_blocks(d, r, i, max_degree)
        z_i = shift_blocks(d + r, 1, i, max_degree + 1)
        for n in range(2, max_degree - 1):
            qm_n, qm_next = m_frame.bases[n], m_frame.bases[n + 1]
            if qm_n.shape[1] == 0 or qm_next.shape[1] == 0:
                continue
            t_block = qm_next.conj().T @ s_i.blocks[n] @ qm_n
            # route through the embedding: U, multiply by z_i inside P, come back
            lift = u.blocks[n] @ qm_n
            proj_p = p_frames[n + 1] @ (p_frames[n + 1].conj().T @ lift)
            moved = z_i.blocks[n + 1] @ proj_p
            back = u.blocks[n + 1].conj().T @ moved
            d_factor = math.sqrt(n + 2) / math.sqrt(n + 1)
            lhs = d_factor * (qm_next.conj().T @ back)
            worst = max(worst, float(np.max(np.abs(lhs - t_block))))
    return worst


def quadratic_reduction_report(F, max_degree: int) -> dict:
    """All residuals of the linear-to-quadratic reduction at one truncation."""
    gens = list(F)
    ambient = gens[0].ambient
    emb = verify_embedding(ambient.d, ambient.r, max_degree)
    reducing_ok, reducing_res = verify_reducing(gens, max_degree)
    ident = compression_identity_residual(gens, max_degree)
    diag = max(
        abs((1 - (n - 1) * (n + 1) / n**2) - 1 / n**2) for n in range(2, max_degree + 1)
    )
    return {
        "quadratic_generators": [str(g) for g in linear_to_quadratic(gens)],
        "isometry_residual": emb["isometry_residual"],
        "intertwine_residual": emb["intertwine_residual"],
        "reducing_ok": reducing_ok,
        "reducing_residual": reducing_res,
        "compression_identity_residual": ident,
        "diagonal_defect_residual": diag,
    }
