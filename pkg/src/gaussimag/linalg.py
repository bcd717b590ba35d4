"""Dense linear-algebra primitives for covariance-matrix computations.

Quadratures are ordered (q1, p1, ..., qn, pn), so a single mode occupies two
adjacent rows/columns.  All matrices are plain dense ndarrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ComplexSqrtBranchFailure, WilliamsonResidualError


def _scaled_tol(m: np.ndarray, tol: float | None) -> float:
    # scale-invariant default so boundary (pure) states are accepted
    if tol is not None:
        return tol
    return 1e-9 * (1.0 + float(np.abs(m).max(initial=0.0)))


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n symplectic form, the direct sum of n copies of [[0,1],[-1,0]]."""
    if n < 1:
        raise ValueError(f"mode count must be >= 1, got {n}")
    delta = np.zeros((2 * n, 2 * n))
    for k in range(n):
        delta[2 * k, 2 * k + 1] = 1.0
        delta[2 * k + 1, 2 * k] = -1.0
    return delta


def is_psd_hermitian(h: np.ndarray, tol: float | None = None) -> bool:
    """Check whether a Hermitian matrix is positive semidefinite within tolerance.

    Args:
        h: square Hermitian matrix (real symmetric or complex).
        tol: absolute eigenvalue tolerance; defaults to 1e-9 * (1 + max|h|).

    Returns:
        True iff the smallest eigenvalue is >= -tol.

    Raises:
        ValueError: if ``h`` is not Hermitian within the same tolerance.
    """
    h = np.asarray(h)
    t = _scaled_tol(h, tol)
    if float(np.abs(h - h.conj().T).max()) > t:
        raise ValueError("matrix is not Hermitian within tolerance")
    return bool(np.linalg.eigvalsh(h).min() >= -t)


def sqrt_spd(a: np.ndarray) -> np.ndarray:
    """Principal square root of a symmetric positive definite matrix."""
    a = np.asarray(a, dtype=float)
    if float(np.abs(a - a.T).max()) > _scaled_tol(a, None):
        raise ValueError("matrix is not symmetric")
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    if w.min() <= 0.0:
        raise ValueError("matrix is not positive definite")
    return (v * np.sqrt(w)) @ v.T


def _spd_sqrt_invsqrt(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh(0.5 * (a + a.T))
    if w.min() <= 0.0:
        raise ValueError("matrix is not positive definite")
    sw = np.sqrt(w)
    return (v * sw) @ v.T, (v / sw) @ v.T


def sqrt_complex_principal(
    a: np.ndarray, cond_limit: float = 1e8, clamp_zero_tol: float = 0.0
) -> np.ndarray:
    """Principal square root of a complex square matrix.

    Uses an eigendecomposition; when the eigenvector matrix is ill-conditioned
    (condition number above ``cond_limit``) falls back to a Schur-based method.
    The principal branch requires the spectrum to avoid the closed negative
    real axis, so every eigenvalue of the result lies in the right half-plane.

    Args:
        a: square complex matrix.
        cond_limit: eigenvector-matrix condition number beyond which the
            Schur fallback is used.
        clamp_zero_tol: when positive, eigenvalues of magnitude below
            clamp_zero_tol * max(1, spectral radius) are treated as exact
            zeros instead of branch errors (for arguments that sit on the
            positive-semidefinite boundary up to rounding noise).

    Raises:
        ComplexSqrtBranchFailure: if an eigenvalue sits on the closed negative
            real axis, or the reconstruction residual is above 1e-10 relative.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("input must be a square matrix")
    w, v = np.linalg.eig(a)
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    if clamp_zero_tol > 0.0:
        clamped = np.abs(w) <= clamp_zero_tol * scale
    else:
        clamped = np.zeros(w.shape, dtype=bool)
    w = np.where(clamped, 0.0, w)
    on_negative_axis = (
        ~clamped & (w.real <= 1e-13 * scale) & (np.abs(w.imag) <= 1e-13 * scale)
    )
    if np.any(on_negative_axis):
        raise ComplexSqrtBranchFailure(
            "eigenvalue on the closed negative real axis; principal branch undefined"
        )
    if np.linalg.cond(v) <= cond_limit:
        root = (v * np.sqrt(w)) @ np.linalg.inv(v)
    else:
        # near-defective eigenvector basis: Schur method is the reliable route
        root = scipy.linalg.sqrtm(a)
    residual = float(np.abs(root @ root - a).max())
    if residual > 1e-10 * (1.0 + float(np.abs(a).max())):
        raise ComplexSqrtBranchFailure(
            f"square-root reconstruction residual {residual:.3e} above tolerance"
        )
    return root


def logdet_spd(a: np.ndarray) -> float:
    """log(det(a)) of a symmetric positive definite matrix via Cholesky."""
    chol = np.linalg.cholesky(a)
    return 2.0 * float(np.log(np.diag(chol)).sum())


def det_spd(a: np.ndarray) -> float:
    return float(np.exp(logdet_spd(a)))


def mode_permutation(n: int) -> np.ndarray:
    """Permutation matrix mapping (q1,p1,...,qn,pn) to (q1,...,qn,p1,...,pn)."""
    if n < 1:
        raise ValueError(f"mode count must be >= 1, got {n}")
    p = np.zeros((2 * n, 2 * n))
    for k in range(n):
        p[k, 2 * k] = 1.0
        p[n + k, 2 * k + 1] = 1.0
    return p


def grouped_index(n: int) -> np.ndarray:
    """Index array i with v[i] == mode_permutation(n) @ v."""
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


@dataclass(frozen=True)
class ModeBlocks:
    """Position/momentum blocks of a covariance matrix after mode reordering."""

    a11: np.ndarray  # position-position
    a12: np.ndarray  # position-momentum
    a22: np.ndarray  # momentum-momentum


def block_split(cm: np.ndarray, n: int) -> ModeBlocks:
    """Split a 2n x 2n covariance matrix into position/momentum blocks."""
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (2 * n, 2 * n):
        raise ValueError(f"expected a {2 * n}x{2 * n} matrix, got {cm.shape}")
    idx = grouped_index(n)
    reordered = cm[np.ix_(idx, idx)]
    return ModeBlocks(
        a11=reordered[:n, :n].copy(),
        a12=reordered[:n, n:].copy(),
        a22=reordered[n:, n:].copy(),
    )


@dataclass(frozen=True)
class WilliamsonForm:
    """Symplectic normal form cm = s @ diag(repeat(nus, 2)) @ s.T with s symplectic."""

    s: np.ndarray
    nus: np.ndarray  # symplectic eigenvalues, descending

    def diagonal(self) -> np.ndarray:
        return np.diag(np.repeat(self.nus, 2))


def _fix_phase(w: np.ndarray) -> np.ndarray:
    # deterministic phase: rotate the largest-magnitude component onto the positive real axis
    j = int(np.argmax(np.abs(w)))
    phase = w[j] / abs(w[j])
    return w / phase


def williamson(cm: np.ndarray, tol: float = 1e-8) -> WilliamsonForm:
    """Symplectic diagonalization of a symmetric positive definite matrix.

    Computes the antisymmetric matrix cm^{-1/2} Delta cm^{-1/2}, brings it to
    canonical form through the eigenvectors of its Hermitian companion, and
    assembles the symplectic factor from the canonicalizing orthogonal basis.
    Both reconstruction residuals are verified before returning.

    Args:
        cm: symmetric positive definite 2n x 2n matrix.
        tol: accepted Frobenius residual (relative for the cm round trip).

    Returns:
        WilliamsonForm with ``s`` symplectic and ``nus`` sorted descending.

    Raises:
        WilliamsonResidualError: when the construction fails to reproduce the
            input within ``tol`` (ill-conditioned input).
    """
    cm = np.asarray(cm, dtype=float)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1] or cm.shape[0] % 2:
        raise ValueError("input must be a 2n x 2n matrix")
    n = cm.shape[0] // 2
    delta = symplectic_form(n)
    root, inv_root = _spd_sqrt_invsqrt(cm)
    skew = inv_root @ delta @ inv_root
    skew = 0.5 * (skew - skew.T)
    # Hermitian companion i*skew has spectrum {+-1/nu_l}
    eigvals, eigvecs = np.linalg.eigh(1j * skew)
    cols = []
    nus = []
    for idx in range(2 * n):
        if eigvals[idx] <= 0.0:
            continue
        w = _fix_phase(eigvecs[:, idx])
        cols.append(np.sqrt(2.0) * w.imag)
        cols.append(np.sqrt(2.0) * w.real)
        nus.append(1.0 / eigvals[idx])
    if len(nus) != n:
        raise WilliamsonResidualError("could not pair the canonical eigenvalues")
    canonicalizer = np.column_stack(cols)
    nus_arr = np.asarray(nus)  # ascending eigvals give descending nus
    s = root @ canonicalizer @ np.diag(np.repeat(1.0 / np.sqrt(nus_arr), 2))

    diag = np.diag(np.repeat(nus_arr, 2))
    res_cm = np.linalg.norm(s @ diag @ s.T - cm) / np.linalg.norm(cm)
    res_sympl = np.linalg.norm(s @ delta @ s.T - delta)
    if res_cm > tol or res_sympl > tol:
        raise WilliamsonResidualError(
            f"reconstruction residuals {res_cm:.3e} / {res_sympl:.3e} exceed tol={tol:.1e}"
        )
    return WilliamsonForm(s=s, nus=nus_arr)
