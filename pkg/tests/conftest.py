from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def full_density(psi):
    v = psi.amplitudes
    return np.outer(v, v.conj())


def oracle_partial_trace(psi, keep):
    """Reduced state from the full dA*dB density matrix by explicit index summation."""
    da, db = psi.dims
    rho = full_density(psi).reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", rho)
    return np.einsum("ijil->jl", rho)


def oracle_apply(psi, a=None, b=None):
    """(a (x) b) acting on the flat amplitude vector via np.kron."""
    da, db = psi.dims
    a = np.eye(da) if a is None else a
    b = np.eye(db) if b is None else b
    return np.kron(a, b) @ psi.amplitudes


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert it."""
    def check(label: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else ""))
        assert ok, f"{label}: {detail}"
    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
