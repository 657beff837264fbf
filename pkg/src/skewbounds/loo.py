"""Local orthogonal observable (LOO) bases and the correlation Gram matrix.

The basis is the generalized Gell-Mann family, trace-orthonormalized, in a
fixed order: for each column index k = 1..d-1, first the antisymmetric and
symmetric off-diagonal pair elements for rows j < k (ascending j), then the
k-th traceless diagonal element; the identity/sqrt(d) comes last.  For d = 2
this is (sigma_y, sigma_x, sigma_z, I)/sqrt(2).

The Gram matrix Gamma_{mu,nu} = Corr(Omega_mu, Omega_nu) encodes every skew
information as a quadratic form a^T Gamma a.  Gamma = C^dag C only fixes the
factor C up to a left unitary, and the modulus vectors below do depend on
that gauge, so one deterministic choice is fixed here: the upper-triangular
semidefinite Cholesky factor, with all-zero rows at rank-deficient pivots.
Bound validity is gauge-free; only the intermediate refinement values move.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError
from .linalg import DensityMatrix, eig_hermitian
from .metrics import MetricSpec, weight_matrix
from .skewinfo import correlation

# Gamma eigenvalues below this are treated as exact kernel directions.
_SQRT_CLAMP = 1e-12


def loo_basis(d: int) -> list[np.ndarray]:
    """The d^2 trace-orthonormal Hermitian basis matrices, fixed order."""
    if d < 2:
        raise DomainError(f"LOO basis needs d >= 2, got {d}")
    elems: list[np.ndarray] = []
    for k in range(1, d):
        for j in range(k):
            M = np.zeros((d, d), dtype=complex)
            M[j, k] = -1j / np.sqrt(2.0)
            M[k, j] = 1j / np.sqrt(2.0)
            elems.append(M)
            M = np.zeros((d, d), dtype=complex)
            M[j, k] = M[k, j] = 1.0 / np.sqrt(2.0)
            elems.append(M)
        diag = np.zeros(d)
        diag[:k] = 1.0
        diag[k] = -k
        elems.append(np.diag(diag).astype(complex) / np.sqrt(k * (k + 1)))
    elems.append(np.eye(d, dtype=complex) / np.sqrt(d))
    return elems


def expand(A: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    """Real coefficient vector a_mu = Tr(Omega_mu A)."""
    d = basis[0].shape[0]
    if A.shape != (d, d):
        raise DimensionMismatch(f"observable shape {A.shape} vs basis dim {d}")
    coeffs = np.array([np.trace(om @ A) for om in basis])
    return coeffs.real.copy()


def reconstruct(coeffs: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    """Sum a_mu Omega_mu."""
    return sum(c * om for c, om in zip(coeffs, basis))


def psd_sqrt(gamma: np.ndarray, clamp: float = _SQRT_CLAMP) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition, small eigenvalues -> 0."""
    w, V = eig_hermitian(gamma)
    w = np.where(w > clamp, w, 0.0)
    return (V * np.sqrt(w)) @ V.conj().T


def cholesky_psd(gamma: np.ndarray, clamp: float = _SQRT_CLAMP) -> np.ndarray:
    """Upper-triangular C with C^dag C = gamma for Hermitian PSD gamma.

    Unlike the strictly-positive-definite factorization, rank deficiency is
    allowed: whenever a pivot falls at or below clamp (relative to the
    largest diagonal entry) the whole row is left zero and elimination
    continues, so the result has exactly rank(gamma) nonzero rows.
    """
    n = gamma.shape[0]
    R = np.zeros((n, n), dtype=complex)
    scale = max(1.0, float(np.max(gamma.real.diagonal(), initial=0.0)))
    for i in range(n):
        pivot = gamma[i, i].real - float(np.sum(np.abs(R[:i, i]) ** 2))
        if pivot <= clamp * scale:
            continue
        R[i, i] = np.sqrt(pivot)
        if i + 1 < n:
            R[i, i + 1 :] = (
                gamma[i, i + 1 :] - R[:i, i].conj() @ R[:i, i + 1 :]
            ) / R[i, i]
    return R


@dataclass(frozen=True)
class GramFactor:
    """Gram matrix of LOO correlations and its canonical triangular factor."""

    gamma: np.ndarray
    factor: np.ndarray


def gram_matrix(
    rho: DensityMatrix, basis: list[np.ndarray], m: MetricSpec
) -> GramFactor:
    """Gamma_{mu,nu} = Corr(Omega_mu, Omega_nu) with canonical factor C."""
    d = rho.dim
    if basis[0].shape != (d, d):
        raise DimensionMismatch(
            f"basis dim {basis[0].shape[0]} vs state dim {d}"
        )
    V = rho.eigenvectors
    W = weight_matrix(m, rho.eigenvalues)
    # rows: each basis element rotated to the eigenbasis, flattened
    M = np.array([(V.conj().T @ om @ V).ravel() for om in basis])
    gamma = (M.conj() * W.ravel()) @ M.T
    gamma = 0.5 * (gamma + gamma.conj().T)
    C = cholesky_psd(gamma)
    gamma.setflags(write=False)
    C.setflags(write=False)
    return GramFactor(gamma=gamma, factor=C)


def modulus_vector(factor: GramFactor, coeffs: np.ndarray) -> np.ndarray:
    """Entrywise moduli of C a; its squared norm is the skew information."""
    C = factor.factor
    if C.shape[1] != len(coeffs):
        raise DimensionMismatch(
            f"factor dim {C.shape[1]} vs coefficient length {len(coeffs)}"
        )
    return np.abs(C @ np.asarray(coeffs))


__all__ = [
    "GramFactor",
    "cholesky_psd",
    "correlation",
    "expand",
    "gram_matrix",
    "loo_basis",
    "modulus_vector",
    "psd_sqrt",
    "reconstruct",
]
