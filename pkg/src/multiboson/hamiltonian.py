"""Exact (N+1) x (N+1) Hamiltonian blocks of one sector and their spectra.

Two equivalent tridiagonal forms are built: the symmetric Fock-basis block
with square-root factorial matrix elements, and the non-symmetric
monomial-basis block whose entries are the hop polynomials evaluated at
integer levels.  The two are related by an explicit diagonal similarity
(ratios of Fock normalization constants), so their spectra agree by
construction; diagonalizing the Fock block is the ground-truth oracle the
root-based solver is checked against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .diffop import hop_coefficients
from .fock import ModelSpec, Sector, occupations_at
from .polyalg import _EXACT_OCCUPATION_LIMIT

# Blocks beyond this size with huge off-diagonal entries get a conditioning
# warning: the entries are finite (log-space construction) but spectra of
# matrices with ~1e12 entry spreads should be inspected, not trusted.
_WARN_DIM = 61
_WARN_ELEMENT = 1e12


class ConditioningWarning(RuntimeWarning):
    """Raised (as a warning) for large blocks with extreme entry growth."""


@dataclass(frozen=True)
class TridiagonalBlock:
    """One sector block; `basis` is 'fock' (symmetric) or 'monomial'.

    upper[i] couples level i -> i+1 and lower[i] couples i+1 -> i; in the
    monomial basis upper[i] = A(i) and lower[i] = C(i+1).  The diagonal is
    the same in both bases: the interaction strictly shifts the level.
    """

    basis: str
    diag: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        mat = np.diag(self.diag)
        n = self.dim
        for i in range(n - 1):
            mat[i + 1, i] = self.upper[i]
            mat[i, i + 1] = self.lower[i]
        return mat

    def apply(self, vec: np.ndarray) -> np.ndarray:
        out = self.diag * vec
        if self.dim > 1:
            out[1:] += self.upper * vec[:-1]
            out[:-1] += self.lower * vec[1:]
        return out


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues (ascending) and eigenvectors (columns, block's basis)."""

    energies: np.ndarray
    vectors: np.ndarray
    residual_norm: float


def transition_element(model: ModelSpec, occupations) -> float:
    """Matrix element of the raw interaction product between level n and n+1.

    Equals prod_{i<=r} sqrt((m_i+k_i)!/m_i!) * prod_{i>r} sqrt(m_i!/(m_i-k_i)!)
    at the given occupations; exact integer products under the square root
    for small occupations, log-space factorial sums above the cutoff.
    """
    factors = []
    for i in model.group1:
        m, k = occupations[i], model.k[i]
        for j in range(1, k + 1):
            factors.append(m + j)
    for i in model.group2:
        m, k = occupations[i], model.k[i]
        for j in range(k):
            factors.append(m - j)
    if any(f < 0 for f in factors):
        raise ValueError("negative factorial ratio: occupations inconsistent with sector")
    if any(f == 0 for f in factors):
        return 0.0
    if max(occupations) <= _EXACT_OCCUPATION_LIMIT:
        prod = 1
        for f in factors:
            prod *= f
        return math.sqrt(prod)
    return math.exp(0.5 * sum(math.log(f) for f in factors))


def _diagonal_energy(model: ModelSpec, occ) -> float:
    e = 0.0
    for i in range(model.n_modes):
        e += float(model.w[i]) * occ[i]
    for i in range(model.n_modes):
        for j in range(i, model.n_modes):
            wij = model.wq[i][j]
            if wij != 0:
                e += float(wij) * occ[i] * occ[j]
    return e


def _maybe_warn_conditioning(block: TridiagonalBlock):
    if block.dim > _WARN_DIM and block.dim > 1:
        peak = max(np.max(np.abs(block.upper)), np.max(np.abs(block.lower)), 0.0)
        if peak > _WARN_ELEMENT:
            warnings.warn(
                f"{block.basis} block of dimension {block.dim} has off-diagonal "
                f"entries up to {peak:.3e}; spectrum may be ill-conditioned",
                ConditioningWarning, stacklevel=3)


def build_sector_matrix(model: ModelSpec, sector: Sector) -> TridiagonalBlock:
    """Symmetric Fock-basis block: diagonal number energies, g times the
    factorial-ratio interaction elements off the diagonal."""
    n_top = sector.n_top
    diag = np.array([_diagonal_energy(model, occupations_at(model, sector, n))
                     for n in range(n_top + 1)])
    off = np.array([float(model.g) * transition_element(model, occupations_at(model, sector, n))
                    for n in range(n_top)])
    block = TridiagonalBlock(basis="fock", diag=diag, upper=off, lower=off.copy())
    _maybe_warn_conditioning(block)
    return block


def build_monomial_matrix(model: ModelSpec, sector: Sector) -> TridiagonalBlock:
    """Non-symmetric monomial-basis block from the hop polynomials."""
    hop_a, hop_b, hop_c = hop_coefficients(model, sector)
    n_top = sector.n_top
    diag = np.array([float(hop_b(n)) for n in range(n_top + 1)])
    upper = np.array([float(hop_a(n)) for n in range(n_top)])
    lower = np.array([float(hop_c(n + 1)) for n in range(n_top)])
    block = TridiagonalBlock(basis="monomial", diag=diag, upper=upper, lower=lower)
    _maybe_warn_conditioning(block)
    return block


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        idx = int(np.argmax(np.abs(col)))
        if col[idx] < 0:
            vectors[:, j] = -col
    return vectors


def diagonalize(block: TridiagonalBlock) -> SpectrumResult:
    """Full eigendecomposition of a sector block.

    The Fock block goes straight to the symmetric tridiagonal solver.  The
    monomial block is symmetrized by the diagonal similarity with ratios
    upper[i]/sqrt(upper[i]*lower[i]) (the Fock normalization ratios), then
    the eigenvectors are mapped back to monomial coordinates.
    """
    n = block.dim
    if block.basis == "fock":
        energies, vectors = eigh_tridiagonal(block.diag, block.upper)
    else:
        prod = block.upper * block.lower
        if n > 1 and np.min(prod) < -1e-12 * max(1.0, float(np.max(np.abs(prod)))):
            raise ValueError("monomial block has upper*lower < 0; cannot symmetrize")
        sym_off = np.sqrt(np.maximum(prod, 0.0))
        energies, sym_vectors = eigh_tridiagonal(block.diag, sym_off)
        scale = np.ones(n)
        for i in range(n - 1):
            scale[i + 1] = scale[i] * (block.upper[i] / sym_off[i] if sym_off[i] > 0 else 1.0)
        vectors = sym_vectors * scale[:, None]
        vectors /= np.linalg.norm(vectors, axis=0, keepdims=True)
    vectors = _fix_phases(np.ascontiguousarray(vectors))

    resid = 0.0
    for j in range(n):
        v = vectors[:, j]
        resid = max(resid, float(np.linalg.norm(block.apply(v) - energies[j] * v)
                                 / np.linalg.norm(v)))
    return SpectrumResult(energies=energies, vectors=vectors, residual_norm=resid)
