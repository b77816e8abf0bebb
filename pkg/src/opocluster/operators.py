"""Joint quadrature operators over modes 3-6 and (theta, omega) sweeps.

The four joint operators are fixed golden-ratio-weighted combinations of
the low-frequency mode quadratures; joint squeezing of all four certifies
the approximate four-mode cluster state. The exponential normalization
prefactors of the ideal squeezed eigenoperators are documentation only:
variances are computed on the unscaled linear combinations, whose vacuum
levels are 2(c1^2+1) and 2(c2^2+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .linearize import LinearizedModel
from .spectra import intracavity_spectrum, lifted_weights, output_joint_variance

__all__ = [
    "C1",
    "C2",
    "JointOperator",
    "standard_operators",
    "SpectralGrid",
    "sweep",
    "fixed_frequency_trace",
]

C1 = (math.sqrt(5.0) - 1.0) / 2.0
C2 = (math.sqrt(5.0) + 1.0) / 2.0

MODES = (3, 4, 5, 6)


@dataclass(frozen=True)
class JointOperator:
    """Weighted sum of single-mode quadratures across modes 3-6."""

    label: str
    weights: Tuple[float, float, float, float]
    quad_types: Tuple[str, str, str, str]
    modes: Tuple[int, int, int, int] = MODES

    @property
    def coherent_level(self) -> float:
        """Vacuum-state variance: sum of squared weights (each single-mode
        quadrature has unit coherent variance)."""
        return float(sum(w * w for w in self.weights))


def standard_operators() -> Tuple[JointOperator, ...]:
    """The four joint operators, in label order O1..O4."""
    return (
        JointOperator("O1", (-C1, C1, -1.0, 1.0), ("X",) * 4),
        JointOperator("O2", (-C2, -C2, 1.0, 1.0), ("X",) * 4),
        JointOperator("O3", (C1, C1, 1.0, 1.0), ("Y",) * 4),
        JointOperator("O4", (C2, -C2, -1.0, 1.0), ("Y",) * 4),
    )


@dataclass(frozen=True)
class SpectralGrid:
    """Joint-operator variances on a rectangular (theta, omega) grid.

    ``values[label]`` has shape (n_theta, n_omega). ``minima[label]`` is
    the refined (theta*, omega*, V*) of each operator; ``sum_minimum`` the
    same for the summed four-operator objective."""

    thetas: np.ndarray
    omegas: np.ndarray
    values: Dict[str, np.ndarray]
    minima: Dict[str, Tuple[float, float, float]]
    sum_minimum: Tuple[float, float, float]

    @property
    def sum_values(self) -> np.ndarray:
        return sum(self.values[op.label] for op in standard_operators())


def _variance_surface(lin: LinearizedModel, thetas, omegas):
    """Evaluate all four operators on the Cartesian grid.

    S(omega) is shared across thetas; the theta dependence enters only
    through the lifted weight vectors."""
    gamma = lin.params.uniform_gamma
    ops = standard_operators()
    thetas = np.asarray(thetas, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    U = {
        op.label: np.array([lifted_weights(op, th) for th in thetas])
        for op in ops
    }
    values = {op.label: np.empty((thetas.size, omegas.size)) for op in ops}
    for j, w in enumerate(omegas):
        S = intracavity_spectrum(lin, w).matrix
        for op in ops:
            u = U[op.label]
            corr = np.einsum("ti,ij,tj->t", u, S, u)
            col = op.coherent_level + 2.0 * gamma * corr
            if np.max(np.abs(col.imag)) > 1e-9:
                raise ArithmeticError("variance surface has imaginary residue")
            values[op.label][:, j] = col.real
    return values


def _refine_omega(lin, op, theta, omegas, j_best):
    """One golden-section pass in omega at the best theta."""
    j0, j1 = max(j_best - 1, 0), min(j_best + 1, omegas.size - 1)
    if j0 == j1:
        return float(omegas[j_best])
    f = lambda w: output_joint_variance(lin, op, theta, w)
    lo, hi = float(omegas[j0]), float(omegas[j1])
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded")
    return float(res.x)


def sweep(lin: LinearizedModel, thetas, omegas) -> SpectralGrid:
    """Full four-operator sweep with per-operator and summed minima."""
    thetas = np.asarray(thetas, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    if thetas.size == 0 or omegas.size == 0:
        raise ValueError("sweep grids must be non-empty")
    values = _variance_surface(lin, thetas, omegas)
    ops = standard_operators()
    minima = {}
    for op in ops:
        V = values[op.label]
        i, j = np.unravel_index(np.argmin(V), V.shape)
        th = float(thetas[i])
        w = _refine_omega(lin, op, th, omegas, j)
        v_ref = output_joint_variance(lin, op, th, w)
        if v_ref > V[i, j]:  # keep the grid point if refinement regressed
            w, v_ref = float(omegas[j]), float(V[i, j])
        minima[op.label] = (th, w, v_ref)
    total = sum(values[op.label] for op in ops)
    i, j = np.unravel_index(np.argmin(total), total.shape)
    th = float(thetas[i])
    fsum = lambda w: sum(output_joint_variance(lin, op, th, w) for op in ops)
    j0, j1 = max(j - 1, 0), min(j + 1, omegas.size - 1)
    if j0 != j1:
        res = minimize_scalar(
            fsum, bounds=(float(omegas[j0]), float(omegas[j1])), method="bounded"
        )
        w_sum = float(res.x)
        if fsum(w_sum) > total[i, j]:
            w_sum = float(omegas[j])
    else:
        w_sum = float(omegas[j])
    return SpectralGrid(
        thetas=thetas,
        omegas=omegas,
        values=values,
        minima=minima,
        sum_minimum=(th, w_sum, fsum(w_sum)),
    )


def fixed_frequency_trace(lin: LinearizedModel, omega: float, thetas):
    """Per-operator V(theta) arrays at one frequency, with decibel
    variants scaled to each operator's coherent level."""
    thetas = np.asarray(thetas, dtype=float)
    values = _variance_surface(lin, thetas, np.array([omega]))
    out = {}
    for op in standard_operators():
        v = values[op.label][:, 0]
        out[op.label] = v
        out[op.label + "_dB"] = 10.0 * np.log10(v / op.coherent_level)
    return out
