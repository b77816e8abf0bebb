"""Linearized fluctuation model around a steady state.

The fluctuations obey ``d(da) = -A da dt + B dW`` with drift matrix A
(minus the Jacobian of the deterministic flow) and diffusion matrix
``D = B B^T``. The variable ordering interleaves conjugate partners:
``[da1, da1+, da2, da2+, ..., da6, da6+]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Union

import numpy as np
import scipy.linalg

from .dynamics import jacobian, noise_matrix, ordered_basis
from .errors import StabilityError
from .params import SystemParams
from .steady import SteadyState

__all__ = [
    "LinearizedModel",
    "build_drift",
    "build_diffusion",
    "stability_eigenvalues",
    "linearize",
    "stationary_covariance",
]

StateLike = Union[SteadyState, np.ndarray]


def _vector(state: StateLike) -> np.ndarray:
    if isinstance(state, SteadyState):
        return state.vector
    return np.asarray(state, dtype=complex)


def build_drift(params: SystemParams, state: StateLike) -> np.ndarray:
    """Drift matrix A = -(analytic Jacobian) at the given state."""
    return -jacobian(params, _vector(state))


def build_diffusion(params: SystemParams, state: StateLike) -> np.ndarray:
    """Diffusion matrix D = B B^T (plain transpose, no conjugation)."""
    B = noise_matrix(params, _vector(state))
    return B @ B.T


def stability_eigenvalues(A: np.ndarray) -> np.ndarray:
    """Eigenvalues of the drift matrix, sorted by ascending real part.

    The linearized model is a valid Ornstein-Uhlenbeck process only when
    every real part is strictly positive; a zero minimum marks threshold.
    """
    A = np.asarray(A, dtype=complex)
    if not np.all(np.isfinite(A.view(float))):
        raise ValueError("drift matrix must be finite")
    vals = np.linalg.eigvals(A)
    return vals[np.argsort(vals.real)]


@dataclass(frozen=True)
class LinearizedModel:
    """Drift/diffusion pair evaluated at a steady state."""

    params: SystemParams
    steady_state: SteadyState
    drift: np.ndarray
    diffusion: np.ndarray
    eigenvalues: np.ndarray
    ordered_basis: List[str] = field(default_factory=ordered_basis)

    @property
    def is_stable(self) -> bool:
        return float(self.eigenvalues.real.min()) > 0.0

    @property
    def stability_margin(self) -> float:
        """Smallest real part of the drift eigenvalues."""
        return float(self.eigenvalues.real.min())


def linearize(params: SystemParams, ss: SteadyState) -> LinearizedModel:
    A = build_drift(params, ss)
    D = build_diffusion(params, ss)
    return LinearizedModel(
        params=params,
        steady_state=ss,
        drift=A,
        diffusion=D,
        eigenvalues=stability_eigenvalues(A),
    )


def stationary_covariance(lin: LinearizedModel) -> np.ndarray:
    """Static covariance C solving A C + C A^T = D (Lyapunov equation)."""
    if not lin.is_stable:
        raise StabilityError(
            f"drift matrix not stable (min Re eig = {lin.stability_margin:.3e})"
        )
    A, D = lin.drift, lin.diffusion
    # transpose (not conjugate) pairing: solve as a Sylvester equation
    return scipy.linalg.solve_sylvester(A, A.T, D)
