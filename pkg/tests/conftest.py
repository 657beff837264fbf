"""Shared helpers: seeded random states, observables, and unitaries."""

import numpy as np

from skewbounds.linalg import DensityMatrix


def random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (G + G.conj().T) / 2.0


def random_density(
    rng: np.random.Generator, d: int, rank: int | None = None
) -> DensityMatrix:
    """A random full- or low-rank state via a Wishart-style construction."""
    k = rank if rank is not None else d
    G = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    M = G @ G.conj().T
    M = M / np.trace(M).real
    return DensityMatrix.from_matrix(M)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish unitary from the QR decomposition of a Ginibre matrix."""
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))
