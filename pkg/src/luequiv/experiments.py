"""Seeded randomized sweeps over the existence theorems.

Each sweep compares the library's decision against quantities computed along a
different route (full density matrix index sums, LAPACK singular values) and
counts disagreements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import bipartite as bp
from . import equivalence as eq
from . import linalg
from .sampling import random_state, random_unitary, rng_from

PAIR_KINDS = ("unrelated", "one-sided-A", "one-sided-B", "two-sided", "low-rank-one-sided-A")


@dataclass(frozen=True)
class SweepConfig:
    seed: int = 1234
    # Pairs per value of dim_a; dim_b cycles through `dims` within each block.
    pairs_per_dim: int = 500
    dims: tuple[int, ...] = (2, 3, 4, 5)
    tol: float = 1e-8

    def dimension_schedule(self):
        for da in self.dims:
            cycle = itertools.cycle(self.dims)
            for _ in range(self.pairs_per_dim):
                yield da, next(cycle)


@dataclass
class SweepResult:
    cases: int = 0
    violations: int = 0
    worst: float = 0.0
    by_kind: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, kind: str, detail: str = "", value: float = 0.0) -> None:
        self.cases += 1
        self.by_kind[kind] = self.by_kind.get(kind, 0) + 1
        self.worst = max(self.worst, value)
        if not ok:
            self.violations += 1
            if len(self.failures) < 10:
                self.failures.append(detail)


def reduced_state_by_index_sum(psi: bp.StateVector, keep: bp.Side) -> np.ndarray:
    """Reduced state from the full density matrix, independent of the coefficient-matrix formulas."""
    da, db = psi.dims
    v = psi.amplitudes
    rho = np.outer(v, v.conj()).reshape(da, db, da, db)
    return np.einsum("ijkj->ik", rho) if keep == "A" else np.einsum("ijil->jl", rho)


def make_pair(rng, kind: str, da: int, db: int) -> tuple[bp.StateVector, bp.StateVector]:
    if kind == "low-rank-one-sided-A":
        psi1 = random_state(rng, da, db, rank=max(1, min(da, db) - 1))
    else:
        psi1 = random_state(rng, da, db)
    if kind == "unrelated":
        return psi1, random_state(rng, da, db)
    if kind in ("one-sided-A", "low-rank-one-sided-A"):
        return psi1, psi1.apply_local(a=random_unitary(rng, da))
    if kind == "one-sided-B":
        return psi1, psi1.apply_local(b=random_unitary(rng, db))
    if kind == "two-sided":
        return psi1, psi1.apply_local(a=random_unitary(rng, da), b=random_unitary(rng, db))
    raise ValueError(kind)


def one_sided_iff_sweep(cfg: SweepConfig) -> SweepResult:
    """witness exists <=> reduced states equal <=> max one-sided overlap = 1, both sides."""
    rng = rng_from(cfg.seed)
    res = SweepResult()
    for n, (da, db) in enumerate(cfg.dimension_schedule()):
        kind = PAIR_KINDS[n % len(PAIR_KINDS)]
        psi1, psi2 = make_pair(rng, kind, da, db)
        for side, keep in (("A", "B"), ("B", "A")):
            has = bool(eq.one_sided_witness(psi1, psi2, side, cfg.tol))
            dist = float(np.linalg.norm(reduced_state_by_index_sum(psi1, keep)
                                        - reduced_state_by_index_sum(psi2, keep)))
            full = eq.max_overlap_one_sided(psi1, psi2, side)[0] >= 1 - cfg.tol
            ok = has == (dist < cfg.tol) == full
            res.record(ok, kind, f"{kind} {da}x{db} side {side}: witness={has} dist={dist:.2e} full={full}")
    return res


def two_sided_iff_sweep(cfg: SweepConfig) -> SweepResult:
    """two-sided witness exists <=> sorted Schmidt spectra agree (LAPACK reference)."""
    rng = rng_from(cfg.seed + 1)
    res = SweepResult()
    for n, (da, db) in enumerate(cfg.dimension_schedule()):
        kind = PAIR_KINDS[n % len(PAIR_KINDS)]
        psi1, psi2 = make_pair(rng, kind, da, db)
        has = bool(eq.two_sided_witness(psi1, psi2, cfg.tol))
        s1 = np.linalg.svd(psi1.coefficients, compute_uv=False)
        s2 = np.linalg.svd(psi2.coefficients, compute_uv=False)
        gap = float(np.max(np.abs(s1 - s2)))
        res.record(has == (gap < cfg.tol), kind, f"{kind} {da}x{db}: witness={has} spectra gap={gap:.2e}")
    return res


def round_trip_sweep(cfg: SweepConfig, residual_tol: float = 1e-9) -> SweepResult:
    """Apply random U (x) I, I (x) U or V (x) W and recover a witness with small residual."""
    rng = rng_from(cfg.seed + 2)
    res = SweepResult()
    kinds = ("one-sided-A", "one-sided-B", "two-sided")
    for n, (da, db) in enumerate(cfg.dimension_schedule()):
        kind = kinds[n % 3]
        psi1, psi2 = make_pair(rng, kind, da, db)
        if kind == "two-sided":
            w = eq.two_sided_witness(psi1, psi2, cfg.tol)
            mats = (w.unitary_a, w.unitary_b) if w else ()
        else:
            w = eq.one_sided_witness(psi1, psi2, kind[-1], cfg.tol)
            mats = (w.unitary,) if w else ()
        ok = bool(w) and w.residual < residual_tol and all(linalg.unitarity_error(m) < residual_tol for m in mats)
        resid = w.residual if w else float("inf")
        res.record(ok, kind, f"{kind} {da}x{db}: residual={resid:.2e}", resid)
    return res


def filter_sweep(cfg: SweepConfig, n_states: int = 200) -> SweepResult:
    """Contraction, reproduction up to phase and success probability of the local filter."""
    rng = rng_from(cfg.seed + 3)
    res = SweepResult()
    for n in range(n_states):
        d = cfg.dims[n % len(cfg.dims)]
        psi = random_state(rng, d, d)
        f = eq.filter_from_max_entangled(psi)
        top = float(np.max(np.linalg.eigvalsh(f.matrix.conj().T @ f.matrix)))
        phi = bp.max_entangled(d).amplitudes
        out = np.kron(f.matrix, np.eye(d)) @ phi
        out /= np.linalg.norm(out)
        ov = np.vdot(psi.amplitudes, out)
        resid = float(np.linalg.norm(out - np.exp(1j * np.angle(ov)) * psi.amplitudes))
        lam_max = float(np.linalg.svd(psi.coefficients, compute_uv=False)[0])
        prob_err = abs(f.success_probability - 1.0 / (d * lam_max**2))
        ok = top <= 1 + 1e-10 and resid < 1e-9 and prob_err < 1e-9
        res.record(ok, f"d={d}", f"d={d}: top={top} resid={resid:.2e} prob_err={prob_err:.2e}",
                   max(resid, prob_err))
    return res
