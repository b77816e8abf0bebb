"""Stationary fluctuation spectra of the linearized model.

For a stable drift matrix the fluctuations form a multivariate
Ornstein-Uhlenbeck process whose intracavity spectral matrix is

    S(w) = (A + i w I)^-1  D  (A^T - i w I)^-1,

and the measurable output variance of a weighted quadrature combination
follows from the input-output relations as

    V_out = sum(c^2) + 2 gamma * c^T Q(theta) S(w) Q(theta)^T c,

where the first term is the coherent (vacuum) level of the combination
and Q(theta) maps the doubled phase-space variables onto quadratures.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .dynamics import DIM, a_idx, p_idx
from .errors import StabilityError, UnsupportedRegimeError
from .linearize import LinearizedModel

__all__ = [
    "SpectralMatrix",
    "intracavity_spectrum",
    "quadrature_transform",
    "lifted_weights",
    "output_joint_variance",
]

ILL_CONDITIONED = 1e12
IMAG_RESIDUE = 1e-10


@dataclass(frozen=True)
class SpectralMatrix:
    """S(w) at a single analysis frequency (units of gamma)."""

    omega: float
    matrix: np.ndarray
    ill_conditioned: bool = False


def intracavity_spectrum(lin: LinearizedModel, omega: float) -> SpectralMatrix:
    """OU spectral matrix at frequency ``omega``.

    Computed by two linear solves rather than explicit inversion; a
    condition number above 1e12 attaches an ill-conditioned flag."""
    if not lin.is_stable:
        raise StabilityError(
            f"spectrum undefined: min Re eig(A) = {lin.stability_margin:.3e}"
        )
    A, D = lin.drift, lin.diffusion
    M = A + 1j * omega * np.eye(DIM)
    flag = False
    if np.linalg.cond(M) > ILL_CONDITIONED:
        flag = True
        warnings.warn(
            f"spectral solve ill-conditioned at omega={omega:g}", RuntimeWarning
        )
    X = np.linalg.solve(M, D)  # (A + iw)^-1 D
    S = np.linalg.solve(A - 1j * omega * np.eye(DIM), X.T).T  # right-solve
    return SpectralMatrix(omega=float(omega), matrix=S, ill_conditioned=flag)


def quadrature_transform(theta: float) -> np.ndarray:
    """Block-diagonal map from (da, da+) pairs to (dX, dY) pairs."""
    Q = np.zeros((DIM, DIM), dtype=complex)
    em, ep = np.exp(-1j * theta), np.exp(1j * theta)
    for m in range(1, 7):
        k = 2 * (m - 1)
        Q[k, a_idx(m)] = em
        Q[k, p_idx(m)] = ep
        Q[k + 1, a_idx(m)] = -1j * em
        Q[k + 1, p_idx(m)] = 1j * ep
    return Q


def lifted_weights(op, theta: float) -> np.ndarray:
    """Q(theta)^T c for a joint operator: its weight vector expressed on
    the doubled phase-space basis."""
    u = np.zeros(DIM, dtype=complex)
    em, ep = np.exp(-1j * theta), np.exp(1j * theta)
    for mode, w, q in zip(op.modes, op.weights, op.quad_types):
        if q == "X":
            u[a_idx(mode)] += w * em
            u[p_idx(mode)] += w * ep
        elif q == "Y":
            u[a_idx(mode)] += -1j * w * em
            u[p_idx(mode)] += 1j * w * ep
        else:
            raise ValueError(f"unknown quadrature selector {q!r}")
    return u


def _real_checked(value: complex, scale: float) -> float:
    if abs(value.imag) > IMAG_RESIDUE * max(1.0, scale):
        raise ArithmeticError(
            f"variance has non-negligible imaginary part {value.imag:.3e}"
        )
    return float(value.real)


def output_joint_variance(
    lin: LinearizedModel,
    op,
    theta: float,
    omega: float,
    spectrum: SpectralMatrix | None = None,
) -> float:
    """Output spectral variance of a joint quadrature operator.

    ``spectrum`` may carry a precomputed S(omega) to amortize sweeps.
    Requires uniform cavity losses (the input-output step assumes a
    single gamma)."""
    gamma = lin.params.uniform_gamma  # raises UnsupportedRegimeError otherwise
    if spectrum is None:
        spectrum = intracavity_spectrum(lin, omega)
    elif spectrum.omega != omega:
        raise ValueError("precomputed spectrum is for a different frequency")
    u = lifted_weights(op, theta)
    corr = u @ spectrum.matrix @ u
    value = op.coherent_level + 2.0 * gamma * corr
    return _real_checked(value, abs(value))
