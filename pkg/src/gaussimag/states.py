"""Gaussian states as (displacement, covariance-matrix) pairs.

Conventions: quadratures interleaved as (q1, p1, ..., qn, pn); the vacuum
covariance matrix is the identity.  A state is physical iff cm + i*Delta >= 0.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import AsymmetricCM, DimensionMismatch, UncertaintyViolation
from .linalg import _scaled_tol, symplectic_form

#: absolute threshold below which displacement/CM entries count as zero
ZERO_TOL = 1e-12


def conjugation_matrix(n: int) -> np.ndarray:
    """diag(1, -1, ..., 1, -1): flips every momentum quadrature."""
    o = np.ones(2 * n)
    o[1::2] = -1.0
    return np.diag(o)


class GaussianState:
    """Validated n-mode Gaussian state.

    Attributes:
        n: mode count.
        d: displacement vector, length 2n (read-only).
        cm: covariance matrix, 2n x 2n symmetric (read-only).
    """

    __slots__ = ("n", "d", "cm")

    def __init__(self, d, cm, tol: float | None = None):
        d = np.array(d, dtype=float)
        cm = np.array(cm, dtype=float)
        if d.ndim != 1 or d.size < 2 or d.size % 2 != 0:
            raise DimensionMismatch(f"displacement must have even length >= 2, got shape {d.shape}")
        n = d.size // 2
        if cm.shape != (2 * n, 2 * n):
            raise DimensionMismatch(
                f"covariance matrix shape {cm.shape} does not match {2 * n} quadratures"
            )
        t = _scaled_tol(cm, tol)
        if float(np.abs(cm - cm.T).max()) > t:
            raise AsymmetricCM("covariance matrix is not symmetric within tolerance")
        cm = 0.5 * (cm + cm.T)
        min_eig = float(np.linalg.eigvalsh(cm + 1j * symplectic_form(n)).min())
        if min_eig < -t:
            raise UncertaintyViolation(
                f"uncertainty principle violated: min eig of cm + i*Delta is {min_eig:.3e}"
            )
        d.setflags(write=False)
        cm.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "cm", cm)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianState is immutable")

    def __repr__(self):
        return f"GaussianState(n={self.n})"

    def conjugate(self) -> "GaussianState":
        """State of the complex-conjugate density operator: d -> O d, cm -> O cm O."""
        o = np.ones(2 * self.n)
        o[1::2] = -1.0
        return GaussianState(o * self.d, np.outer(o, o) * self.cm)

    def is_real(self, zero_tol: float = ZERO_TOL) -> bool:
        """True iff all momentum displacements and all q-p covariances vanish."""
        if float(np.abs(self.d[1::2]).max(initial=0.0)) > zero_tol:
            return False
        return float(np.abs(self.cm[0::2, 1::2]).max()) <= zero_tol

    def reduce(self, modes: Sequence[int]) -> "GaussianState":
        """Restrict to a subset of modes (1-based), keeping the given order."""
        modes = list(modes)
        if not modes:
            raise ValueError("mode subset must be nonempty")
        if len(set(modes)) != len(modes):
            raise ValueError(f"duplicate modes in {modes}")
        for m in modes:
            if not 1 <= m <= self.n:
                raise ValueError(f"mode {m} out of range 1..{self.n}")
        idx = np.concatenate([[2 * (m - 1), 2 * m - 1] for m in modes])
        return GaussianState(self.d[idx], self.cm[np.ix_(idx, idx)])

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d.tolist(), "cm": self.cm.tolist()}

    @classmethod
    def from_dict(cls, obj: dict, tol: float | None = None) -> "GaussianState":
        d = np.asarray(obj["d"], dtype=float)
        cm = np.asarray(obj["cm"], dtype=float)
        if "n" in obj and 2 * int(obj["n"]) != d.size:
            raise DimensionMismatch(f"declared n={obj['n']} but displacement has {d.size} entries")
        return cls(d, cm, tol=tol)


def coherent_state(alphas: Sequence[complex]) -> GaussianState:
    """Product of single-mode coherent states: d interleaves (2 Re a, 2 Im a), cm = I."""
    alphas = [complex(a) for a in alphas]
    if not alphas:
        raise ValueError("need at least one mode")
    d = np.empty(2 * len(alphas))
    d[0::2] = [2.0 * a.real for a in alphas]
    d[1::2] = [2.0 * a.imag for a in alphas]
    return GaussianState(d, np.eye(2 * len(alphas)))


def displaced_squeezed_thermal(n_th: float, zeta: complex, alpha: complex) -> GaussianState:
    """Single-mode displaced squeezed thermal state.

    The covariance matrix is (1 + 2 n_th) times the squeezed-vacuum CM with
    squeezing magnitude |zeta| and phase arg(zeta); the displacement is
    (2 Re alpha, 2 Im alpha).
    """
    if n_th < 0:
        raise ValueError(f"thermal photon number must be >= 0, got {n_th}")
    zeta = complex(zeta)
    r = abs(zeta)
    theta = np.angle(zeta) if r > 0 else 0.0
    ch, sh = np.cosh(2 * r), np.sinh(2 * r)
    cm = (1.0 + 2.0 * n_th) * np.array(
        [
            [ch + np.cos(theta) * sh, np.sin(theta) * sh],
            [np.sin(theta) * sh, ch - np.cos(theta) * sh],
        ]
    )
    alpha = complex(alpha)
    return GaussianState([2.0 * alpha.real, 2.0 * alpha.imag], cm)


def two_mode_squeezed_vacuum(r: float) -> GaussianState:
    """Two-mode squeezed vacuum with the factor-2 covariance normalization.

    Note the r=0 limit is cm = 2*I, deliberately not the single-mode vacuum
    normalization; the dynamics closed forms assume this scaling.
    """
    ch, sh = 2.0 * np.cosh(2 * r), 2.0 * np.sinh(2 * r)
    cm = np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return GaussianState(np.zeros(4), cm)
