"""Oscillation threshold of the symmetric system.

The threshold is located operationally: the pump amplitude at which the
trivial steady state loses linear stability, found by bisection on the
smallest real part of the drift eigenvalues.
"""

from __future__ import annotations

from .errors import NoThresholdError, UnsupportedRegimeError
from .linearize import build_drift, stability_eigenvalues
from .params import SystemParams
from .steady import trivial_steady_state

__all__ = ["threshold_pump", "stability_margin_at"]

RELATIVE_TOLERANCE = 1e-6


def stability_margin_at(params: SystemParams, eps: float) -> float:
    """min Re eig(A) at the trivial steady state with both pumps at eps."""
    p = params.with_pump(eps)
    A = build_drift(p, trivial_steady_state(p))
    return float(stability_eigenvalues(A).real.min())


def threshold_pump(params: SystemParams) -> float:
    """Critical pump amplitude of the symmetric regime.

    Pump amplitudes carried by ``params`` are ignored; only chi and gamma
    enter. Bisection runs on the bracket [0, 10 gamma^2 / chi] until the
    bracket is narrower than 1e-6 relative.
    """
    g = params.gamma
    if params.chi1 != params.chi2 or not all(gi == g[0] for gi in g):
        raise UnsupportedRegimeError(
            "threshold is defined only for equal nonlinearities and uniform losses"
        )
    gamma = g[0]
    chi = params.chi1
    lo, hi = 0.0, 10.0 * gamma * gamma / chi
    if stability_margin_at(params, hi) > 0.0:
        raise NoThresholdError(
            f"no stability loss inside bracket [0, {hi:g}]"
        )
    while (hi - lo) > RELATIVE_TOLERANCE * max(hi, 1e-300):
        mid = 0.5 * (lo + hi)
        if stability_margin_at(params, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
