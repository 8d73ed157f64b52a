"""Bipartite pure states: construction, Schmidt analysis, reduced states, overlaps.

A state on H_A (x) H_B is stored as a flat amplitude vector with the index
convention ``amplitudes[i * dim_b + j] = <i|_A <j|_B |psi>``. Reshaping that
vector row-major gives the coefficient matrix ``C`` (dim_a x dim_b), and every
local operator acts on it by matrix multiplication::

    (X (x) Y) |psi>   <->   X @ C @ Y.T
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import linalg
from .errors import BadShape, DimensionMismatch, NotNormalized, ZeroVector

Side = Literal["A", "B"]

DEFAULT_TOL = 1e-9
ENTANGLEMENT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class StateVector:
    dim_a: int
    dim_b: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def coefficients(self) -> np.ndarray:
        """The dim_a x dim_b coefficient matrix (a copy)."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b).copy()

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    @classmethod
    def from_coefficients(cls, c) -> "StateVector":
        c = np.asarray(c, dtype=complex)
        return cls(c.shape[0], c.shape[1], c.reshape(-1))

    def swapped(self) -> "StateVector":
        """The same state with subsystems A and B exchanged."""
        return StateVector.from_coefficients(self.coefficients.T)

    def apply_local(self, a=None, b=None) -> "StateVector":
        """(a (x) b)|psi>; ``None`` stands for the identity. Not renormalized."""
        c = self.coefficients
        if a is not None:
            c = np.asarray(a, dtype=complex) @ c
        if b is not None:
            c = c @ np.asarray(b, dtype=complex).T
        return StateVector.from_coefficients(c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ZeroVector("cannot normalize the zero vector")
        return StateVector(self.dim_a, self.dim_b, self.amplitudes / n)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``psi = sum_k coefficients[k] * left[:, k] (x) right[:, k]``.

    ``left`` and ``right`` are full unitaries (dim_a x dim_a, dim_b x dim_b);
    only the first ``min(dim_a, dim_b)`` columns pair with coefficients.
    """

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def reconstruct(self) -> StateVector:
        k = self.coefficients.size
        c = (self.left[:, :k] * self.coefficients) @ self.right[:, :k].T
        return StateVector.from_coefficients(c)


def make_state(dim_a: int, dim_b: int, amplitudes, tol: float = DEFAULT_TOL,
               renormalize: bool = False) -> StateVector:
    if dim_a < 1 or dim_b < 1:
        raise BadShape(f"local dimensions must be >= 1, got ({dim_a}, {dim_b})")
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amps.size != dim_a * dim_b:
        raise BadShape(f"expected {dim_a * dim_b} amplitudes, got {amps.size}")
    if not np.all(np.isfinite(amps)):
        raise BadShape("amplitudes must be finite")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ZeroVector("amplitude vector is zero")
    if renormalize:
        amps = amps / norm
    elif abs(norm - 1.0) >= tol:
        raise NotNormalized(f"state norm is {norm:.12g}, expected 1 within {tol:g}")
    return StateVector(dim_a, dim_b, amps)


def product_state(a, b) -> StateVector:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return make_state(a.size, b.size, np.kron(a, b), renormalize=True)


def basis_state(dim_a: int, dim_b: int, i: int, j: int) -> StateVector:
    amps = np.zeros(dim_a * dim_b, dtype=complex)
    amps[i * dim_b + j] = 1.0
    return StateVector(dim_a, dim_b, amps)


def max_entangled(d: int) -> StateVector:
    """Phi_d = (1/sqrt d) sum_i |i>|i>."""
    return StateVector.from_coefficients(np.eye(d, dtype=complex) / math.sqrt(d))


def _require_same_dims(psi: StateVector, phi: StateVector) -> None:
    if psi.dims != phi.dims:
        raise DimensionMismatch(f"dimensions differ: {psi.dims} vs {phi.dims}")


def schmidt(psi: StateVector, tol: float = DEFAULT_TOL) -> SchmidtDecomposition:
    r = linalg.svd(psi.coefficients, tol)
    coeffs = r.singulars.copy()
    coeffs[coeffs < tol] = 0.0
    # C = U S V^dag, so the right Schmidt vectors are the conjugated columns of V.
    return SchmidtDecomposition(coefficients=coeffs, left=r.left, right=r.right.conj())


def schmidt_coefficients(psi: StateVector, tol: float = DEFAULT_TOL) -> np.ndarray:
    return schmidt(psi, tol).coefficients


def entanglement_entropy(psi: StateVector, tol: float = DEFAULT_TOL) -> float:
    """Von Neumann entropy of either reduced state, in bits."""
    p = schmidt_coefficients(psi, tol) ** 2
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def is_maximally_entangled(psi: StateVector, tol: float = ENTANGLEMENT_TOL) -> bool:
    lam = schmidt_coefficients(psi)
    d = lam.size
    return bool(np.max(np.abs(lam - 1.0 / math.sqrt(d))) < tol)


def same_spectrum(psi: StateVector, phi: StateVector, tol: float = ENTANGLEMENT_TOL) -> bool:
    """Equal Schmidt coefficient multisets, elementwise within ``tol``."""
    _require_same_dims(psi, phi)
    return spectrum_distance(psi, phi) < tol


def spectrum_distance(psi: StateVector, phi: StateVector) -> float:
    _require_same_dims(psi, phi)
    return float(np.max(np.abs(schmidt_coefficients(psi) - schmidt_coefficients(phi))))


def partial_trace(psi: StateVector, keep: Side) -> np.ndarray:
    """Reduced density matrix on subsystem ``keep``.

    rho_A = C C^dag and rho_B = C^T conj(C) (= conj(C^dag C)).
    """
    c = psi.coefficients
    if keep == "A":
        rho = c @ c.conj().T
    elif keep == "B":
        rho = c.T @ c.conj()
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return 0.5 * (rho + rho.conj().T)


def overlap(psi: StateVector, phi: StateVector) -> complex:
    """<psi|phi>."""
    _require_same_dims(psi, phi)
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def equal_up_to_phase(psi: StateVector, phi: StateVector,
                      tol: float = DEFAULT_TOL) -> tuple[bool, float | None]:
    """``(True, theta)`` with phi ~ e^{i theta} psi when |<psi|phi>| >= 1 - tol."""
    ov = overlap(psi, phi)
    if abs(ov) >= 1.0 - tol:
        return True, cmath.phase(ov)
    return False, None


def phase_distance(psi: StateVector, phi: StateVector) -> tuple[float, float]:
    """``(min_theta |phi - e^{i theta} psi|, theta)`` for normalized inputs."""
    ov = overlap(psi, phi)
    theta = cmath.phase(ov) if ov != 0 else 0.0
    diff = phi.amplitudes - cmath.exp(1j * theta) * psi.amplitudes
    return float(np.linalg.norm(diff)), theta
