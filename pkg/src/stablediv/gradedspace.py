"""Numerical coordinates for graded pieces of H2 tensor C^r.

Every degree-n piece gets the orthonormalized monomial basis
z^alpha / ||z^alpha|| placed in each channel, enumerated in a fixed
deterministic order (exponents lexicographically descending, channel
minor).  Matrices built here are plain complex numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .norms import monomial_h2_norm_sq
from .polyring import Ambient, MultiIndex, Polynomial, exponents_of_degree, index_add


def monomial_norm(alpha: MultiIndex) -> float:
    return math.sqrt(float(monomial_h2_norm_sq(alpha)))


def graded_basis(ambient: Ambient, n: int) -> list[tuple[MultiIndex, int]]:
    """Deterministic (multi-index, channel) list indexing the degree-n piece."""
    return [
        (alpha, c)
        for alpha in exponents_of_degree(ambient.d, n)
        for c in range(ambient.r)
    ]


def graded_dim(ambient: Ambient, n: int) -> int:
    return math.comb(n + ambient.d - 1, ambient.d - 1) * ambient.r


def basis_positions(ambient: Ambient, n: int) -> dict[tuple[MultiIndex, int], int]:
    return {key: i for i, key in enumerate(graded_basis(ambient, n))}


def poly_to_vec(p: Polynomial, n: int) -> np.ndarray:
    """Coordinates of a homogeneous degree-n polynomial in the orthonormal basis."""
    pos = basis_positions(p.ambient, n)
    vec = np.zeros(len(pos), dtype=complex)
    for alpha, channel, c in p.terms():
        vec[pos[(alpha, channel)]] = complex(c) * monomial_norm(alpha)
    return vec


def vec_to_poly(vec: np.ndarray, ambient: Ambient, n: int, tol: float = 0.0) -> Polynomial:
    terms = {}
    for x, (alpha, channel) in zip(vec, graded_basis(ambient, n)):
        z = complex(x)
        if abs(z) > tol:
            terms[(alpha, channel)] = z / monomial_norm(alpha)
    return Polynomial(ambient, terms, exact=False)


def multiplication_matrix(f: Polynomial, src_degree: int) -> np.ndarray:
    """Matrix of a |-> a * f from scalar degree src_degree into degree src_degree + deg f.

    Both sides carry orthonormalized monomial bases; f may be vector
    valued, in which case the target ambient keeps f's channel count.
    """
    m = f.total_degree()
    if m < 0:
        raise ValueError("multiplication by the zero polynomial")
    ambient = f.ambient
    src = exponents_of_degree(ambient.d, src_degree)
    tgt_pos = basis_positions(ambient, src_degree + m)
    out = np.zeros((len(tgt_pos), len(src)), dtype=complex)
    fterms = [(alpha, ch, complex(c)) for alpha, ch, c in f.terms()]
    for col, beta in enumerate(src):
        wb = monomial_norm(beta)
        for alpha, ch, c in fterms:
            target = index_add(alpha, beta)
            out[tgt_pos[(target, ch)], col] += c * monomial_norm(target) / wb
    return out


def orthonormal_columns(mat: np.ndarray, rel_tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the column space, rank cut at rel_tol * sigma_max."""
    if mat.size == 0 or mat.shape[1] == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    rank = int(np.sum(s > rel_tol * s[0]))
    return u[:, :rank]


def orthonormal_complement(basis: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of orthonormal columns in C^dim."""
    if basis.shape[1] == 0:
        return np.eye(dim, dtype=complex)
    u, _, _ = np.linalg.svd(basis, full_matrices=True)
    return u[:, basis.shape[1]:]


@dataclass
class ModuleFrame:
    """Per-degree orthonormal bases of a graded submodule and its complement."""

    ambient: Ambient
    max_degree: int
    bases: dict[int, np.ndarray]
    complements: dict[int, np.ndarray]

    def dim(self, n: int) -> int:
        return self.bases[n].shape[1]

    def projection(self, n: int) -> np.ndarray:
        q = self.bases[n]
        return q @ q.conj().T

    def complement_projection(self, n: int) -> np.ndarray:
        dim = graded_dim(self.ambient, n)
        return np.eye(dim, dtype=complex) - self.projection(n)


def module_frame(ambient: Ambient, generators, max_degree: int, rel_tol: float = 1e-9) -> ModuleFrame:
    """Frames of the module generated by homogeneous generators, degrees 0..max_degree."""
    gens = [g.to_float() if g.exact else g for g in generators]
    for g in gens:
        if g.is_zero() or not g.is_homogeneous():
            raise ValueError("generators must be nonzero and homogeneous")
        if g.ambient.names != ambient.names or g.ambient.r != ambient.r:
            raise ValueError("generator ambient mismatch")
    bases = {}
    complements = {}
    for n in range(max_degree + 1):
        blocks = [
            multiplication_matrix(g, n - g.total_degree())
            for g in gens
            if g.total_degree() <= n
        ]
        dim = graded_dim(ambient, n)
        if blocks:
            q = orthonormal_columns(np.concatenate(blocks, axis=1), rel_tol)
        else:
            q = np.zeros((dim, 0), dtype=complex)
        bases[n] = q
        complements[n] = orthonormal_complement(q, dim)
    return ModuleFrame(ambient, max_degree, bases, complements)
