"""Dense complex kernels for small matrices: Jacobi SVD, Jacobi eigh, unitary completion.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here is
written for d <= 32; the Jacobi sweeps are O(d^3) per sweep and typically
converge in well under ten sweeps.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadShape, NonConvergence, NotHermitian, NotOrthonormal, NotUnitary

DEFAULT_TOL = 1e-9
MAX_SWEEPS = 60
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SvdResult:
    """Full SVD ``a = left[:, :k] @ diag(singulars) @ right[:, :k].conj().T``.

    ``left`` is rows x rows and ``right`` is cols x cols; ``k = min(rows, cols)``.
    """

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = self.singulars.size
        return (self.left[:, :k] * self.singulars) @ self.right[:, :k].conj().T


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=complex)
    if m.ndim != 2:
        raise BadShape(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise BadShape(f"{name} has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def unitarity_error(u: np.ndarray) -> float:
    """Frobenius norm of ``u^dagger u - I``."""
    return float(np.linalg.norm(dagger(u) @ u - np.eye(u.shape[1])))


def check_unitary(u, tol: float = DEFAULT_TOL, name: str = "matrix") -> np.ndarray:
    u = as_cmatrix(u, name)
    if u.shape[0] != u.shape[1]:
        raise NotUnitary(f"{name} is not square: {u.shape}")
    err = unitarity_error(u)
    if err >= tol:
        raise NotUnitary(f"{name} is not unitary: |U^dag U - I| = {err:.3e}")
    return u


def _phase_fix(vecs: np.ndarray) -> np.ndarray:
    """Per-column phase making the largest-magnitude entry real positive."""
    idx = np.argmax(np.abs(vecs), axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    mags = np.abs(pivots)
    phases = np.ones_like(pivots)
    nz = mags > 0
    phases[nz] = pivots[nz] / mags[nz]
    return phases.conj()


def _scale_exponent(a: np.ndarray) -> int:
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    return int(np.frexp(amax)[1]) if amax > 0 else 0


def _ldexp(a: np.ndarray, exp: int) -> np.ndarray:
    return np.ldexp(a.real, exp) + 1j * np.ldexp(a.imag, exp)


def _jacobi_columns(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One-sided (Hestenes) Jacobi: returns (W, V) with W = a V, columns of W orthogonal."""
    w = a.copy()
    n = w.shape[1]
    v = np.eye(n, dtype=complex)
    # Relative orthogonality threshold between a column pair.
    thresh = max(n, 2) * _EPS
    # Columns below this squared norm are rounding noise and never orthogonalize.
    floor = (thresh * float(np.linalg.norm(a))) ** 2
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                wp = w[:, p]
                wq = w[:, q]
                alpha = np.vdot(wp, wp).real
                beta = np.vdot(wq, wq).real
                gamma = np.vdot(wp, wq)
                g = abs(gamma)
                if g == 0.0 or min(alpha, beta) <= floor or g <= thresh * np.sqrt(alpha) * np.sqrt(beta):
                    continue
                rotated = True
                u = gamma / g
                zeta = (beta - alpha) / (2.0 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                su = s * u
                for m in (w, v):
                    mp = m[:, p].copy()
                    m[:, p] = c * mp - np.conj(su) * m[:, q]
                    m[:, q] = su * mp + c * m[:, q]
        if not rotated:
            return w, v
    raise NonConvergence(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")


def complete_to_unitary(cols, tol: float = DEFAULT_TOL, n: int | None = None) -> np.ndarray:
    """Extend ``k`` orthonormal columns to an ``n x n`` unitary.

    New columns come from Gram-Schmidt on the standard basis, each time taking
    the basis vector with the largest residual (lowest index on ties), so the
    output is a deterministic function of the input.
    """
    cols = np.array(cols, dtype=complex)
    if cols.ndim == 1:
        cols = cols[:, None]
    if cols.ndim != 2:
        raise BadShape(f"columns must be a 2-d array, got shape {cols.shape}")
    n = cols.shape[0] if n is None else n
    if cols.shape[0] != n:
        raise BadShape(f"columns have length {cols.shape[0]}, expected {n}")
    k = cols.shape[1]
    if k > n:
        raise NotOrthonormal(f"{k} columns cannot be orthonormal in dimension {n}")
    gram_err = float(np.linalg.norm(dagger(cols) @ cols - np.eye(k))) if k else 0.0
    if gram_err >= tol:
        raise NotOrthonormal(f"columns fail the Gram test: |C^dag C - I| = {gram_err:.3e}")
    out = np.zeros((n, n), dtype=complex)
    out[:, :k] = cols
    basis = np.eye(n, dtype=complex)
    for m in range(k, n):
        q = out[:, :m]
        resid = basis - q @ (dagger(q) @ basis)
        resid -= q @ (dagger(q) @ resid)
        norms = np.linalg.norm(resid, axis=0)
        best = int(np.argmax(norms))
        out[:, m] = resid[:, best] / norms[best]
    return out


def svd(a, tol: float = DEFAULT_TOL) -> SvdResult:
    """Singular value decomposition by one-sided Jacobi rotations.

    Singular values are sorted descending. Each left singular vector has its
    largest-magnitude entry real positive (the right vector takes the same
    phase), which pins the decomposition up to ties inside degenerate clusters.
    Left/right null-space columns come from :func:`complete_to_unitary`.
    """
    a = as_cmatrix(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    rows, cols = a.shape
    if rows < cols:
        r = svd(dagger(a), tol)
        return SvdResult(left=r.right, singulars=r.singulars, right=r.left)

    # Exact power-of-two rescaling so the rotation tests neither underflow nor overflow.
    exp = _scale_exponent(a)
    w, v = _jacobi_columns(_ldexp(a, -exp))
    sing = np.linalg.norm(w, axis=0)
    order = np.argsort(-sing, kind="stable")
    sing = sing[order]
    w = w[:, order]
    v = v[:, order]

    # Columns this small relative to the top value carry no usable direction.
    cutoff = max(rows, cols) * _EPS * (sing[0] if sing.size else 0.0)
    kept = []
    basis = np.zeros((rows, 0), dtype=complex)
    for k in range(sing.size):
        if sing[k] <= cutoff or sing[k] == 0.0:
            continue
        col = w[:, k] / sing[k]
        for _ in range(2):
            col = col - basis @ (dagger(basis) @ col)
        nrm = np.linalg.norm(col)
        # A column mostly inside the span of earlier ones is rounding noise.
        if nrm < 0.5:
            continue
        basis = np.column_stack([basis, col / nrm])
        kept.append(k)
    if kept:
        ph = _phase_fix(basis)
        basis = basis * ph
        v[:, kept] = v[:, kept] * ph
    full = complete_to_unitary(basis, tol=max(tol, 1e-6), n=rows)
    left = np.empty_like(full)
    left[:, kept] = full[:, :len(kept)]
    rest = [k for k in range(rows) if k not in set(kept)]
    left[:, rest] = full[:, len(kept):]

    res = SvdResult(left=left, singulars=np.ldexp(sing, exp), right=v)
    scale = max(1.0, float(np.linalg.norm(a)))
    if float(np.linalg.norm(res.reconstruct() - a)) >= tol * scale or unitarity_error(left) >= tol:
        raise NonConvergence("SVD residual exceeds tolerance")
    return res


def _reorthonormalize(q: np.ndarray) -> np.ndarray:
    # Gram-Schmidt with one re-orthogonalization; inputs are already orthogonal to ~eps.
    q = q.copy()
    for m in range(q.shape[1]):
        for _ in range(2):
            prev = q[:, :m]
            q[:, m] -= prev @ (dagger(prev) @ q[:, m])
        q[:, m] /= np.linalg.norm(q[:, m])
    return q


def eigh(h, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(values, vectors)`` with values descending and ``h @ vectors ==
    vectors @ diag(values)``. The eigenvector phase follows the same
    largest-entry-real-positive convention as :func:`svd`.
    """
    h = as_cmatrix(h)
    n = h.shape[0]
    if h.shape[1] != n:
        raise NotHermitian(f"matrix is not square: {h.shape}")
    herr = float(np.linalg.norm(h - dagger(h)))
    if herr >= tol:
        raise NotHermitian(f"|H - H^dag| = {herr:.3e} exceeds tol {tol:g}")
    exp = _scale_exponent(h)
    a = _ldexp(0.5 * (h + dagger(h)), -exp)
    vecs = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    thresh = _EPS * max(scale, np.finfo(float).tiny)
    for _ in range(MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= thresh / n:
                    continue
                u = apq / g
                tau = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                # Phase on column q makes a[p, q] real; a real Givens rotation then zeroes it.
                # Column transform by J = [[c, s], [-s ub, c ub]] (ub = conj(u)), then rows by J^dag.
                ub = np.conj(u)
                for m in (a, vecs):
                    mp = m[:, p].copy()
                    m[:, p] = c * mp - s * ub * m[:, q]
                    m[:, q] = s * mp + c * ub * m[:, q]
                ap = a[p, :].copy()
                a[p, :] = c * ap - s * u * a[q, :]
                a[q, :] = s * ap + c * u * a[q, :]
                a[p, q] = a[q, p] = 0.0
    else:
        raise NonConvergence(f"Jacobi eigh did not converge in {MAX_SWEEPS} sweeps")

    values = np.ldexp(np.diag(a).real, exp)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vecs = _reorthonormalize(vecs[:, order])
    vecs = vecs * _phase_fix(vecs)
    resid = float(np.linalg.norm(h @ vecs - vecs * values))
    if resid >= tol * max(1.0, float(np.ldexp(scale, exp))) or unitarity_error(vecs) >= tol:
        raise NonConvergence("eigh residual exceeds tolerance")
    return values, vecs


def polar_unitary(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unitary (isometry) factor of the polar decomposition, ``W V^dagger`` from ``a = W S V^dagger``."""
    a = as_cmatrix(a)
    r = svd(a, tol)
    k = r.singulars.size
    return r.left[:, :k] @ dagger(r.right[:, :k])


def nuclear_norm(a, tol: float = DEFAULT_TOL) -> float:
    return float(np.sum(svd(a, tol).singulars))
