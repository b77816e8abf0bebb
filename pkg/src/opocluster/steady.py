"""Classical (noise-free) steady states of the doubled-phase-space flow."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .dynamics import DIM, a_idx, deterministic_rhs, jacobian, p_idx
from .errors import ConvergenceError, SingularJacobianError
from .params import SystemParams

__all__ = ["SteadyState", "trivial_steady_state", "solve_steady_state", "residual_tolerance"]

MAX_NEWTON_ITER = 200
NONTRIVIAL_CUTOFF = 1e-6


def residual_tolerance(params: SystemParams) -> float:
    return 1e-10 * max(1.0, abs(params.eps1), abs(params.eps2))


@dataclass(frozen=True)
class SteadyState:
    """A root of the deterministic flow.

    ``alpha``/``alpha_plus`` hold the six mode amplitudes and their
    conjugate-field partners; on the classical branch the latter are the
    element-wise complex conjugates of the former.
    """

    alpha: Tuple[complex, ...]
    alpha_plus: Tuple[complex, ...]
    residual: float
    branch: str  # "trivial" or "nontrivial"

    @property
    def vector(self) -> np.ndarray:
        """Interleaved 12-component state vector."""
        v = np.zeros(DIM, dtype=complex)
        for m in range(1, 7):
            v[a_idx(m)] = self.alpha[m - 1]
            v[p_idx(m)] = self.alpha_plus[m - 1]
        return v

    @classmethod
    def from_vector(cls, y: np.ndarray, residual: float) -> "SteadyState":
        y = np.asarray(y, dtype=complex)
        alpha = tuple(y[a_idx(m)] for m in range(1, 7))
        alpha_plus = tuple(y[p_idx(m)] for m in range(1, 7))
        low = max(
            max(abs(a) for a in alpha[2:]),
            max(abs(a) for a in alpha_plus[2:]),
        )
        branch = "nontrivial" if low > NONTRIVIAL_CUTOFF else "trivial"
        return cls(alpha=alpha, alpha_plus=alpha_plus, residual=residual, branch=branch)

    @property
    def is_conjugate_symmetric(self) -> bool:
        return all(
            abs(ap - np.conj(a)) < 1e-9 * max(1.0, abs(a))
            for a, ap in zip(self.alpha, self.alpha_plus)
        )


def trivial_steady_state(params: SystemParams) -> SteadyState:
    """Below-threshold branch: pumps at eps/gamma, low modes empty."""
    y = np.zeros(DIM, dtype=complex)
    y[a_idx(1)] = params.eps1 / params.gamma[0]
    y[p_idx(1)] = np.conj(params.eps1) / params.gamma[0]
    y[a_idx(2)] = params.eps2 / params.gamma[1]
    y[p_idx(2)] = np.conj(params.eps2) / params.gamma[1]
    res = float(np.max(np.abs(deterministic_rhs(params, y))))
    return SteadyState.from_vector(y, res)


def solve_steady_state(params: SystemParams, initial_guess: np.ndarray) -> SteadyState:
    """Damped Newton iteration on the 12 coupled deterministic equations.

    The conjugate-symmetry constraint is not imposed; the classical branch
    satisfies it on its own. Branch selection is by initial guess only.
    """
    y = np.array(initial_guess, dtype=complex).reshape(DIM)
    if not np.all(np.isfinite(y.view(float))):
        raise ValueError("initial guess must be finite")
    tol = residual_tolerance(params)
    f = deterministic_rhs(params, y)
    res = float(np.max(np.abs(f)))
    best = res
    for _ in range(MAX_NEWTON_ITER):
        if res < tol:
            return SteadyState.from_vector(y, res)
        J = jacobian(params, y)
        try:
            cond = np.linalg.cond(J)
        except np.linalg.LinAlgError:
            cond = np.inf
        if not np.isfinite(cond):
            raise SingularJacobianError("Jacobian singular at Newton iterate")
        if cond > 1e12:
            # near-singular (e.g. on the above-threshold phase orbit):
            # minimum-norm step suppresses the null direction
            step = np.linalg.lstsq(J, -f, rcond=None)[0]
        else:
            step = np.linalg.solve(J, -f)
        lam = 1.0
        accepted = False
        while lam >= 2.0 ** -30:
            y_try = y + lam * step
            f_try = deterministic_rhs(params, y_try)
            res_try = float(np.max(np.abs(f_try)))
            if res_try < res:
                y, f, res = y_try, f_try, res_try
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            break
        best = min(best, res)
    if res < tol:
        return SteadyState.from_vector(y, res)
    raise ConvergenceError(
        f"Newton did not reach residual {tol:.3e}; best residual {best:.3e}",
        best_residual=best,
    )
