"""Local-unitary relations between bipartite pure states.

Three kinds of relation are decided and, when they hold, constructed:

* one-sided ``psi2 ~ (U (x) I) psi1`` (or ``(I (x) U)``), which exists exactly
  when both states have the same reduced state on the untouched subsystem;
* two-sided ``psi2 ~ (V (x) W) psi1``, which exists exactly when the Schmidt
  spectra agree;
* a local filter ``psi ~ (M (x) I) Phi_d`` with ``M^dag M <= I``.

For the two-qubit family ``psi1 = a|00> + b|11>``, ``psi2 = b*|00> - a*|11>``
:func:`solve_one_sided_2x2` carries out the explicit 2x2 unitary algebra and
reports which modulus conditions clash. :func:`commutation_gap` and
:func:`relation_chain_check` measure what goes wrong when a filter is commuted
past a two-sided unitary.

All equalities between states are up to a global phase, which each witness
records. ``side="A"`` means the unitary acts on the first subsystem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .bipartite import (
    ENTANGLEMENT_TOL,
    Side,
    StateVector,
    _require_same_dims,
    max_entangled,
    overlap,
    partial_trace,
    phase_distance,
    schmidt,
)
from .errors import (
    BadParams,
    DegenerateState,
    DimensionMismatch,
    NoTwoSidedWitness,
    NotSquareDims,
)

DEFAULT_TOL = ENTANGLEMENT_TOL


@dataclass(frozen=True, eq=False)
class OneSidedWitness:
    side: Side
    unitary: np.ndarray
    residual: float
    phase: float

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class TwoSidedWitness:
    unitary_a: np.ndarray
    unitary_b: np.ndarray
    residual: float
    phase: float

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoWitness:
    """Negative answer. ``diagnostic`` is the norm that failed the equality test."""

    reason: str
    diagnostic: float

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, eq=False)
class FilterOperator:
    matrix: np.ndarray
    success_probability: float


@dataclass(frozen=True)
class Parametrized2x2Unitary:
    """``[[alpha, lam*beta], [-conj(beta), lam*conj(alpha)]]``."""

    alpha: complex
    beta: complex
    lam: complex

    def __post_init__(self):
        n = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n - 1.0) > 1e-9 or abs(abs(self.lam) - 1.0) > 1e-9:
            raise BadParams(f"not a unitary parametrization: |alpha|^2+|beta|^2={n}, |lam|={abs(self.lam)}")

    @property
    def matrix(self) -> np.ndarray:
        a, b, l = self.alpha, self.beta, self.lam
        return np.array([[a, l * b], [-np.conj(b), l * np.conj(a)]], dtype=complex)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class CounterexampleParams:
    """Amplitudes of ``psi1 = a|00> + b|11>``; ``psi2 = conj(b)|00> - conj(a)|11>``."""

    a: complex
    b: complex

    def validate(self, tol: float = 1e-9) -> None:
        n = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(n - 1.0) >= tol:
            raise BadParams(f"|a|^2 + |b|^2 = {n:.12g}, expected 1")
        if abs(self.a) < tol or abs(self.b) < tol:
            raise BadParams("a and b must both be nonzero")

    @property
    def unequal_moduli(self) -> bool:
        """The strict condition |a| != |b| with 0 < |a|, |b| < 1."""
        return abs(abs(self.a) - abs(self.b)) > 1e-12 and 0 < abs(self.a) < 1 and 0 < abs(self.b) < 1

    def states(self) -> tuple[StateVector, StateVector]:
        a, b = complex(self.a), complex(self.b)
        psi1 = StateVector(2, 2, np.array([a, 0, 0, b]))
        psi2 = StateVector(2, 2, np.array([b.conjugate(), 0, 0, -a.conjugate()]))
        return psi1, psi2


@dataclass(frozen=True)
class Inconsistent:
    """The equations force beta = 0 and then ask for two different values of |alpha|."""

    required_modulus_first: float  # |alpha| = |b / a|, from a*alpha = conj(b)
    required_modulus_second: float  # |alpha| = |a / b|, from b*lam*conj(alpha) = -conj(a)
    beta: complex = 0j
    explanation: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ChainReport:
    composed_residual: float  # (V (x) W)(M (x) I) Phi vs psi_j
    swapped_residual: float  # (M (x) I)(V (x) W) Phi vs psi_j
    composed_holds: bool
    swapped_holds: bool
    gap: float
    filter: FilterOperator = field(repr=False)
    witness: TwoSidedWitness = field(repr=False)


def _oriented(psi: StateVector, side: Side) -> StateVector:
    # Work with the acted-on subsystem first.
    if side == "A":
        return psi
    if side == "B":
        return psi.swapped()
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def _untouched(side: Side) -> Side:
    return "B" if side == "A" else "A"


def reduced_state_distance(psi1: StateVector, psi2: StateVector, side: Side) -> float:
    """Frobenius distance of the reduced states on the subsystem ``side`` does not act on."""
    _require_same_dims(psi1, psi2)
    keep = _untouched(side)
    return float(np.linalg.norm(partial_trace(psi1, keep) - partial_trace(psi2, keep)))


def one_sided_witness(psi1: StateVector, psi2: StateVector, side: Side = "A",
                      tol: float = DEFAULT_TOL) -> OneSidedWitness | NoWitness:
    """Find U with ``psi2 = e^{i theta} (U (x) I) psi1`` (``side="A"``) or the mirrored form.

    Such a U exists iff the two states share the reduced state on the other
    subsystem. Built from a common eigenbasis {e_k} of that reduced state:
    U sends ``(I (x) <e_k|) psi1 / sqrt(p_k)`` to the same slice of psi2.
    """
    _require_same_dims(psi1, psi2)
    dist = reduced_state_distance(psi1, psi2, side)
    if dist >= tol:
        return NoWitness("reduced states on the untouched subsystem differ", dist)

    c1 = _oriented(psi1, side).coefficients
    c2 = _oriented(psi2, side).coefficients
    n = c1.shape[0]
    rho = 0.5 * (c1.T @ c1.conj() + c2.T @ c2.conj())
    p, e = linalg.eigh(rho, tol=max(tol, 1e-9))
    support = p > tol
    if not np.any(support):
        raise DegenerateState("reduced state has no eigenvalue above tolerance")
    # For a state sum_{ij} C_ij |i>|j>, (I (x) <e|) psi = C conj(e).
    src = (c1 @ e[:, support].conj()) / np.sqrt(p[support])
    dst = (c2 @ e[:, support].conj()) / np.sqrt(p[support])
    src = linalg.complete_to_unitary(linalg.polar_unitary(src), n=n)
    dst = linalg.complete_to_unitary(linalg.polar_unitary(dst), n=n)
    u = dst @ linalg.dagger(src)

    acted = psi1.apply_local(a=u) if side == "A" else psi1.apply_local(b=u)
    residual, theta = phase_distance(psi2, acted)
    return OneSidedWitness(side=side, unitary=u, residual=residual, phase=theta)


def two_sided_witness(psi1: StateVector, psi2: StateVector,
                      tol: float = DEFAULT_TOL) -> TwoSidedWitness | NoWitness:
    """Find V, W with ``psi2 = e^{i theta} (V (x) W) psi1``; exists iff Schmidt spectra agree.

    With ``C1 = U1 S V1^dag`` and ``C2 = U2 S V2^dag`` the pair is
    ``V = U2 U1^dag`` and ``W = conj(V2) V1^T``. Degenerate Schmidt values need
    no special treatment because both full SVDs share the same S.
    """
    _require_same_dims(psi1, psi2)
    s1 = schmidt(psi1)
    s2 = schmidt(psi2)
    diff = float(np.max(np.abs(s1.coefficients - s2.coefficients)))
    if diff >= tol:
        return NoWitness("Schmidt spectra differ", diff)
    # schmidt() stores right = conj(V) for C = U S V^dag.
    va = s2.left @ linalg.dagger(s1.left)
    wb = s2.right @ linalg.dagger(s1.right)
    acted = psi1.apply_local(a=va, b=wb)
    residual, theta = phase_distance(psi2, acted)
    return TwoSidedWitness(unitary_a=va, unitary_b=wb, residual=residual, phase=theta)


def procrustes_matrix(psi1: StateVector, psi2: StateVector, side: Side = "A") -> np.ndarray:
    """A with ``<psi2|(U (x) I)|psi1> = tr(U A)``: C1 C2^dag for side A, C1^T conj(C2) for side B."""
    _require_same_dims(psi1, psi2)
    c1 = _oriented(psi1, side).coefficients
    c2 = _oriented(psi2, side).coefficients
    return c1 @ linalg.dagger(c2)


def max_overlap_one_sided(psi1: StateVector, psi2: StateVector,
                          side: Side = "A") -> tuple[float, np.ndarray]:
    """max_U |<psi2|(U (x) I) psi1>| and a maximizer.

    The maximum of |tr(U A)| over unitaries is the nuclear norm of A; with
    ``A = W S V^dag`` it is reached at ``U = V W^dag``.
    """
    a = procrustes_matrix(psi1, psi2, side)
    r = linalg.svd(a)
    u = r.right @ linalg.dagger(r.left)
    value = float(min(1.0, np.sum(r.singulars)))
    return value, u


def max_overlap_two_sided(psi1: StateVector, psi2: StateVector) -> float:
    """max over V, W of |<psi2|(V (x) W) psi1>| = sum_k of products of sorted Schmidt coefficients."""
    _require_same_dims(psi1, psi2)
    return float(min(1.0, np.dot(schmidt(psi1).coefficients, schmidt(psi2).coefficients)))


def solve_one_sided_2x2(params: CounterexampleParams,
                        tol: float = 1e-9) -> Parametrized2x2Unitary | Inconsistent:
    """Solve ``(U (x) I)(a|00> + b|11>) = conj(b)|00> - conj(a)|11>`` for a 2x2 unitary U.

    Writing U in the (alpha, beta, lam) form, the four amplitude equations are::

        a alpha = conj(b)      b lam beta = 0
        -a conj(beta) = 0      b lam conj(alpha) = -conj(a)

    The middle two force beta = 0 (a, b nonzero, |lam| = 1), hence |alpha| = 1.
    The outer two then need |alpha| = |b/a| and |alpha| = |a/b|, which is only
    possible when |a| = |b|.
    """
    params.validate(tol)
    a, b = complex(params.a), complex(params.b)
    first = abs(b) / abs(a)
    second = abs(a) / abs(b)
    if abs(first - 1.0) >= tol or abs(second - 1.0) >= tol:
        return Inconsistent(
            required_modulus_first=first,
            required_modulus_second=second,
            explanation=(
                f"beta = 0 forces |alpha| = 1, but a*alpha = conj(b) needs |alpha| = {first:.12g} "
                f"and b*lam*conj(alpha) = -conj(a) needs |alpha| = {second:.12g}"
            ),
        )
    alpha = b.conjugate() / a
    alpha /= abs(alpha)
    lam = -a.conjugate() / (b * alpha.conjugate())
    lam /= abs(lam)
    return Parametrized2x2Unitary(alpha=alpha, beta=0j, lam=lam)


def filter_from_max_entangled(psi: StateVector, tol: float = 1e-9) -> FilterOperator:
    """Local filter M with ``(M (x) I) Phi_d`` proportional to psi and ``M^dag M <= I``.

    ``M = C / lambda_max`` (C the coefficient matrix), the largest multiple of
    ``sqrt(d) C`` that is still a contraction. The filter succeeds with
    probability ``1 / (d lambda_max^2)``.
    """
    if psi.dim_a != psi.dim_b:
        raise NotSquareDims(f"filter needs dim_a == dim_b, got {psi.dims}")
    d = psi.dim_a
    lam_max = float(schmidt(psi).coefficients[0])
    if lam_max < tol:
        raise DegenerateState("largest Schmidt coefficient is below tolerance")
    scale = 1.0 / (math.sqrt(d) * lam_max)
    m = scale * math.sqrt(d) * psi.coefficients
    filtered = max_entangled(d).apply_local(a=m)
    return FilterOperator(matrix=m, success_probability=filtered.norm() ** 2)


def _check_local(m: np.ndarray, dim: int, name: str) -> np.ndarray:
    m = linalg.as_cmatrix(m, name)
    if m.shape != (dim, dim):
        raise DimensionMismatch(f"{name} has shape {m.shape}, expected ({dim}, {dim})")
    return m


def commutation_gap(m, v, w, phi: StateVector, tol: float = 1e-9) -> float:
    """``|(M (x) I)(V (x) W) phi - (V (x) W)(M (x) I) phi|``."""
    m = _check_local(m, phi.dim_a, "m")
    v = _check_local(v, phi.dim_a, "v")
    w = _check_local(w, phi.dim_b, "w")
    linalg.check_unitary(v, tol, "v")
    linalg.check_unitary(w, tol, "w")
    c = phi.coefficients
    filter_last = m @ v @ c @ w.T
    filter_first = v @ m @ c @ w.T
    return float(np.linalg.norm(filter_last - filter_first))


def relation_chain_check(psi1: StateVector, psij: StateVector,
                         tol: float = DEFAULT_TOL) -> ChainReport:
    """Compare the two orderings of filter and two-sided unitary acting on Phi_d.

    ``(V (x) W)(M (x) I) Phi_d`` reproduces psi_j by construction; the swapped
    order ``(M (x) I)(V (x) W) Phi_d`` only does so when M and V commute
    closely enough. Residuals are phase-minimized distances after normalization.
    """
    if psi1.dim_a != psi1.dim_b:
        raise NotSquareDims(f"chain check needs dim_a == dim_b, got {psi1.dims}")
    _require_same_dims(psi1, psij)
    filt = filter_from_max_entangled(psi1)
    wit = two_sided_witness(psi1, psij, tol)
    if not wit:
        raise NoTwoSidedWitness(f"Schmidt spectra differ by {wit.diagnostic:.3e}")
    phi = max_entangled(psi1.dim_a)
    m, v, w = filt.matrix, wit.unitary_a, wit.unitary_b
    composed = phi.apply_local(a=m).apply_local(a=v, b=w).normalized()
    swapped = phi.apply_local(a=v, b=w).apply_local(a=m).normalized()
    r8, _ = phase_distance(psij, composed)
    r9, _ = phase_distance(psij, swapped)
    return ChainReport(
        composed_residual=r8,
        swapped_residual=r9,
        composed_holds=r8 < tol,
        swapped_holds=r9 < tol,
        gap=commutation_gap(m, v, w, phi),
        filter=filt,
        witness=wit,
    )


def one_sided_orbit_overlap(psi1: StateVector, psi2: StateVector, u, side: Side = "A") -> float:
    """|<psi2|(U (x) I)|psi1>| for a given U (mirrored for side B)."""
    acted = psi1.apply_local(a=u) if side == "A" else psi1.apply_local(b=u)
    return abs(overlap(psi2, acted))


def counterexample_overlap_grid(params: CounterexampleParams, n_t: int = 25,
                                n_phase: int = 48) -> float:
    """Brute-force max of |<psi2|(U (x) I)|psi1>| over a grid of (alpha, beta, lam).

    alpha = cos t e^{i f1}, beta = sin t e^{i f2}, lam = e^{i f3}.
    """
    psi1, psi2 = params.states()
    a = procrustes_matrix(psi1, psi2, "A")
    t = np.linspace(0.0, math.pi / 2, n_t)
    f = np.linspace(0.0, 2 * math.pi, n_phase, endpoint=False)
    T, F1, F2, F3 = np.meshgrid(t, f, f, f, indexing="ij")
    al = np.cos(T) * np.exp(1j * F1)
    be = np.sin(T) * np.exp(1j * F2)
    la = np.exp(1j * F3)
    # tr(U A) with U = [[al, la be], [-conj(be), la conj(al)]]
    tr = (al * a[0, 0] + la * be * a[1, 0] - np.conj(be) * a[0, 1] + la * np.conj(al) * a[1, 1])
    return float(np.max(np.abs(tr)))

