"""Imaginarity measures for Gaussian states.

Three quantifiers of how far a state is from having a real density operator:

* ``imaginarity`` -- determinant ratio of the covariance matrix against its
  position/momentum blocks plus a 0/1 indicator of momentum displacement.
  Cheap for any mode count; this is the measure the package is built around.
* ``fidelity_imaginarity`` -- one minus the fidelity between the state and its
  conjugate, evaluated through the closed-form Gaussian fidelity chain.
* ``tsallis_imaginarity`` -- one minus a Tsallis-type overlap of order mu,
  evaluated through the symplectic normal form.

Single-mode closed forms of all three are provided for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexSqrtBranchFailure, InvalidMu, NonRealResult, WilliamsonResidualError
from .linalg import block_split, det_spd, logdet_spd, sqrt_complex_principal, symplectic_form, williamson
from .states import ZERO_TOL, GaussianState, conjugation_matrix


def momentum_indicator(state: GaussianState, zero_tol: float = ZERO_TOL) -> int:
    """0/1 indicator of any nonzero momentum displacement (l1-norm above zero_tol)."""
    return int(float(np.abs(state.d[1::2]).sum()) > zero_tol)


def imaginarity(state: GaussianState, zero_tol: float = ZERO_TOL) -> float:
    """Covariance-ratio imaginarity measure, in [0, 2].

    Value is 1 - det(cm) / (det(A11) det(A22)) plus the momentum-displacement
    indicator, where A11/A22 are the position/momentum blocks of the reordered
    covariance matrix.  Zero exactly on real states; the indicator lifts the
    value into [1, 2] whenever any momentum quadrature is displaced.
    """
    blocks = block_split(state.cm, state.n)
    log_ratio = logdet_spd(state.cm) - logdet_spd(blocks.a11) - logdet_spd(blocks.a22)
    det_part = -math.expm1(log_ratio)  # 1 - ratio, accurate near zero
    return max(0.0, det_part) + momentum_indicator(state, zero_tol)


def imaginarity_single_mode(
    n_th: float, zeta: complex, alpha: complex, zero_tol: float = ZERO_TOL
) -> float:
    """Closed form of ``imaginarity`` on displaced squeezed thermal states.

    Equals 1 - 1/(1 + sin^2(theta) sinh^2(2|zeta|)) plus 1 when Im(alpha) is
    nonzero; independent of the thermal photon number.
    """
    if n_th < 0:
        raise ValueError(f"thermal photon number must be >= 0, got {n_th}")
    zeta = complex(zeta)
    theta = np.angle(zeta) if abs(zeta) > 0 else 0.0
    s2 = math.sin(theta) ** 2 * math.sinh(2 * abs(zeta)) ** 2
    h = 1.0 if 2.0 * abs(complex(alpha).imag) > zero_tol else 0.0
    return 1.0 - 1.0 / (1.0 + s2) + h


def _fidelity_w_chain(half_cm1: np.ndarray, half_cm2: np.ndarray) -> dict:
    """Auxiliary-matrix chain of the closed-form Gaussian fidelity.

    Operates on half-normalized covariance matrices (vacuum = I/2); the
    determinant of the assembled matrix is the fourth power of the
    un-normalized total fidelity.  The square root must stay on the principal
    branch, so the determinant is checked for a spurious imaginary residue.
    """
    n = half_cm1.shape[0] // 2
    eye = np.eye(2 * n)
    i_delta = 1j * symplectic_form(n)
    w1 = -2.0 * half_cm1 @ i_delta
    w2 = -2.0 * half_cm2 @ i_delta
    w_aux = -np.linalg.solve(w1 + w2, eye + w2 @ w1)
    inv_sq = np.linalg.solve(w_aux @ w_aux, eye)
    # pure modes put the argument exactly on the PSD boundary; clamp the
    # rounding noise around its zero eigenvalues
    root = sqrt_complex_principal(eye - inv_sq, clamp_zero_tol=1e-12)
    f_tot4 = complex(np.linalg.det((root + eye) @ w_aux @ i_delta))
    if abs(f_tot4.imag) > 1e-9 * (1.0 + abs(f_tot4.real)):
        raise NonRealResult(f"total-fidelity determinant has imaginary part {f_tot4.imag:.3e}")
    if f_tot4.real <= 0.0:
        raise NonRealResult(f"total-fidelity determinant is not positive: {f_tot4.real:.3e}")
    return {"w_aux": w_aux, "f_tot4": f_tot4}


def _fidelity_chain(state: GaussianState, conj: GaussianState | None = None) -> dict:
    """Evaluate the Gaussian fidelity between a state and its conjugate.

    Returns the intermediates alongside the final value so the branch choice
    of the matrix square root can be regression-tested.
    """
    if conj is None:
        conj = state.conjugate()
    chain = _fidelity_w_chain(0.5 * state.cm, 0.5 * conj.cm)
    cm_sum = state.cm + conj.cm
    f0 = chain["f_tot4"].real ** 0.25 / det_spd(0.5 * cm_sum) ** 0.25
    dd = state.d - conj.d
    exponent = -0.25 * float(dd @ np.linalg.solve(cm_sum, dd))
    value = 1.0 - f0 * math.exp(exponent)
    return {**chain, "f0": f0, "exponent": exponent, "value": value}


def fidelity_imaginarity(state: GaussianState, conj: GaussianState | None = None) -> float:
    """One minus the fidelity between the state and its conjugate."""
    return _fidelity_chain(state, conj)["value"]


def fidelity_imaginarity_single_mode(n_th: float, zeta: complex, alpha: complex) -> float:
    """Closed form of ``fidelity_imaginarity`` on displaced squeezed thermal states."""
    if n_th < 0:
        raise ValueError(f"thermal photon number must be >= 0, got {n_th}")
    zeta = complex(zeta)
    r = abs(zeta)
    theta = np.angle(zeta) if r > 0 else 0.0
    s2 = math.sin(theta) ** 2 * math.sinh(2 * r) ** 2
    im_a = complex(alpha).imag
    numer = math.exp(
        -2.0 * im_a**2 / ((2 * n_th + 1) * (math.cosh(2 * r) - math.cos(theta) * math.sinh(2 * r)))
    )
    lam4 = 4.0 * n_th**2 * (n_th + 1) ** 2  # = 4 * Lambda with Lambda the purity defect term
    denom = math.sqrt(math.sqrt((2 * n_th + 1) ** 2 * (1.0 + s2) + lam4) - 2 * n_th * (n_th + 1))
    return 1.0 - numer / denom


def _mu_weights(nus: np.ndarray, mu: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # q = exp(-eta) per symplectic eigenvalue; q = 0 is the pure-state limit.
    # q**mu has a sqrt-type cusp at q = 0, so eigenvalues within rounding
    # noise of 1 must be snapped to the limit or the cusp amplifies the noise.
    q = np.where(nus <= 1.0 + 1e-10, 0.0, (nus - 1.0) / (nus + 1.0))
    factors = (1.0 - q) / ((1.0 - q**mu) * (1.0 - q ** (1.0 - mu)))
    scale_mu = 2.0 / (1.0 - q**mu) - 1.0
    scale_1mu = 2.0 / (1.0 - q ** (1.0 - mu)) - 1.0
    return factors, scale_mu, scale_1mu


def tsallis_imaginarity(state: GaussianState, mu: float) -> float:
    """One minus the Tsallis-type overlap of order mu between state and conjugate.

    Needs the full symplectic normal form of the covariance matrix, so this is
    the most expensive of the three measures.
    """
    if not 0.0 < mu < 1.0:
        raise InvalidMu(f"mu must be in (0, 1), got {mu}")
    n = state.n
    form = williamson(state.cm)
    factors, scale_mu, scale_1mu = _mu_weights(form.nus, mu)
    cm_mu = form.s @ np.diag(np.repeat(scale_mu, 2)) @ form.s.T
    cm_1mu = form.s @ np.diag(np.repeat(scale_1mu, 2)) @ form.s.T
    o = conjugation_matrix(n)
    cm_sum = cm_mu + o @ cm_1mu @ o
    cm_sum = 0.5 * (cm_sum + cm_sum.T)
    prefactor = 2.0**n * float(np.prod(factors)) / math.sqrt(det_spd(cm_sum))
    dd = state.d - o @ state.d
    exponent = -0.5 * float(dd @ np.linalg.solve(cm_sum, dd))
    return 1.0 - prefactor * math.exp(exponent)


def tsallis_imaginarity_single_mode(n_th: float, zeta: complex, alpha: complex, mu: float) -> float:
    """Closed form of ``tsallis_imaginarity`` on displaced squeezed thermal states."""
    if not 0.0 < mu < 1.0:
        raise InvalidMu(f"mu must be in (0, 1), got {mu}")
    if n_th < 0:
        raise ValueError(f"thermal photon number must be >= 0, got {n_th}")
    zeta = complex(zeta)
    r = abs(zeta)
    theta = np.angle(zeta) if r > 0 else 0.0
    s2 = math.sin(theta) ** 2 * math.sinh(2 * r) ** 2
    x = n_th / (n_th + 1.0)
    pm = (1.0 - x**mu) * (1.0 - x ** (1.0 - mu))
    g = 2.0 * (1.0 - x) / pm
    h2 = (1.0 + x**mu) * (1.0 + x ** (1.0 - mu)) / pm
    prefactor = g / math.sqrt(g**2 + 4.0 * h2 * s2)
    im_a = complex(alpha).imag
    exp_num = (
        -4.0 * im_a**2 * (1.0 - x) * (math.cosh(2 * r) + math.cos(theta) * math.sinh(2 * r))
    )
    exp_den = (1.0 - x) ** 2 / pm + (1.0 + x**mu) * (1.0 + x ** (1.0 - mu)) * s2
    return 1.0 - prefactor * math.exp(exp_num / exp_den)


@dataclass
class MeasureReport:
    """All three measures of one state plus the diagnostics behind the cheap one."""

    imaginarity: float
    h_term: int
    det_cm: float
    det_pos_block: float
    det_mom_block: float
    zero_tol: float
    mu: float | None = None
    fidelity_imaginarity: float | None = None
    tsallis_imaginarity: float | None = None
    fidelity_error: str | None = None
    tsallis_error: str | None = None

    def to_dict(self) -> dict:
        return {
            "imaginarity": self.imaginarity,
            "h_term": self.h_term,
            "det_cm": self.det_cm,
            "det_pos_block": self.det_pos_block,
            "det_mom_block": self.det_mom_block,
            "zero_tol": self.zero_tol,
            "mu": self.mu,
            "fidelity_imaginarity": self.fidelity_imaginarity,
            "tsallis_imaginarity": self.tsallis_imaginarity,
            "fidelity_error": self.fidelity_error,
            "tsallis_error": self.tsallis_error,
        }


_NUMERIC_FAILURES = (
    ComplexSqrtBranchFailure,
    NonRealResult,
    WilliamsonResidualError,
    np.linalg.LinAlgError,
)


def measure_all(state: GaussianState, mu: float = 0.5, zero_tol: float = ZERO_TOL) -> MeasureReport:
    """Evaluate all three measures; the fragile paths may fail and are flagged.

    The covariance-ratio measure always succeeds on a valid state.  Failures of
    the fidelity or Tsallis path are captured as messages instead of raising.
    """
    blocks = block_split(state.cm, state.n)
    report = MeasureReport(
        imaginarity=imaginarity(state, zero_tol),
        h_term=momentum_indicator(state, zero_tol),
        det_cm=det_spd(state.cm),
        det_pos_block=det_spd(blocks.a11),
        det_mom_block=det_spd(blocks.a22),
        zero_tol=zero_tol,
        mu=mu,
    )
    try:
        report.fidelity_imaginarity = fidelity_imaginarity(state)
    except _NUMERIC_FAILURES as exc:
        report.fidelity_error = f"{type(exc).__name__}: {exc}"
    try:
        report.tsallis_imaginarity = tsallis_imaginarity(state, mu)
    except _NUMERIC_FAILURES as exc:
        report.tsallis_error = f"{type(exc).__name__}: {exc}"
    return report
