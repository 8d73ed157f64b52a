"""Seeded random states and unitaries for tests and sweep scripts.

States: Gaussian complex amplitudes, normalized. Unitaries: Gaussian complex
matrix, QR, with the R-diagonal phases folded back in (Haar distributed).
"""
from __future__ import annotations

import numpy as np

from .bipartite import StateVector


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_complex(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(rng: np.random.Generator, dim_a: int, dim_b: int,
                 rank: int | None = None) -> StateVector:
    """Random pure state; ``rank`` caps the Schmidt rank."""
    if rank is None:
        c = random_complex(rng, (dim_a, dim_b))
    else:
        c = random_complex(rng, (dim_a, rank)) @ random_complex(rng, (rank, dim_b))
    c /= np.linalg.norm(c)
    return StateVector.from_coefficients(c)


def random_schmidt_state(rng: np.random.Generator, coefficients, dim_a: int,
                         dim_b: int) -> StateVector:
    """State with the given Schmidt coefficients in random local bases."""
    lam = np.asarray(coefficients, dtype=float)
    s = np.zeros((dim_a, dim_b))
    s[np.arange(lam.size), np.arange(lam.size)] = lam
    c = random_unitary(rng, dim_a) @ s @ random_unitary(rng, dim_b).T
    return StateVector.from_coefficients(c / np.linalg.norm(c))


def random_contraction(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random M with largest singular value 1."""
    m = random_complex(rng, (n, n))
    return m / np.linalg.norm(m, 2)
