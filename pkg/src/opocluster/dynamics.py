"""Deterministic flow, analytic Jacobian and noise matrix in the doubled
phase space.

State vectors are length-12 complex arrays ordered as
``[a1, a1+, a2, a2+, ..., a6, a6+]``: the conjugate-field variable of each
mode sits next to it. The plus-sector equations are the alpha-sector
equations with the two sectors swapped and the noise columns shifted.
"""

from __future__ import annotations

import numpy as np

from .params import COUPLINGS, SystemParams

__all__ = [
    "DIM",
    "a_idx",
    "p_idx",
    "deterministic_rhs",
    "jacobian",
    "noise_matrix",
    "ordered_basis",
]

DIM = 12


def a_idx(mode: int) -> int:
    """Index of alpha_mode in the state vector (mode is 1-based)."""
    return 2 * (mode - 1)


def p_idx(mode: int) -> int:
    """Index of alpha_mode^+ in the state vector."""
    return 2 * (mode - 1) + 1


def ordered_basis() -> list:
    """Human-readable labels of the state components."""
    out = []
    for m in range(1, 7):
        out.append(f"d_alpha{m}")
        out.append(f"d_alpha{m}+")
    return out


def deterministic_rhs(params: SystemParams, y: np.ndarray) -> np.ndarray:
    """Noise-free right-hand side of the 12 coupled equations."""
    y = np.asarray(y, dtype=complex)
    f = np.zeros(DIM, dtype=complex)
    g = params.gamma
    for m in range(1, 7):
        f[a_idx(m)] = -g[m - 1] * y[a_idx(m)]
        f[p_idx(m)] = -g[m - 1] * y[p_idx(m)]
    f[a_idx(1)] += params.eps1
    f[p_idx(1)] += np.conj(params.eps1)
    f[a_idx(2)] += params.eps2
    f[p_idx(2)] += np.conj(params.eps2)
    for c in COUPLINGS:
        chi = c.chi(params)
        ap, pp = y[a_idx(c.pump)], y[p_idx(c.pump)]
        as_, ps = y[a_idx(c.signal)], y[p_idx(c.signal)]
        ai, pi = y[a_idx(c.idler)], y[p_idx(c.idler)]
        f[a_idx(c.pump)] -= chi * as_ * ai
        f[p_idx(c.pump)] -= chi * ps * pi
        f[a_idx(c.signal)] += chi * ap * pi
        f[p_idx(c.signal)] += chi * pp * ai
        f[a_idx(c.idler)] += chi * ap * ps
        f[p_idx(c.idler)] += chi * pp * as_
    return f


def jacobian(params: SystemParams, y: np.ndarray) -> np.ndarray:
    """Analytic Jacobian of :func:`deterministic_rhs` at ``y``."""
    y = np.asarray(y, dtype=complex)
    J = np.zeros((DIM, DIM), dtype=complex)
    g = params.gamma
    for m in range(1, 7):
        J[a_idx(m), a_idx(m)] = -g[m - 1]
        J[p_idx(m), p_idx(m)] = -g[m - 1]
    for c in COUPLINGS:
        chi = c.chi(params)
        P, Pp = a_idx(c.pump), p_idx(c.pump)
        S, Sp = a_idx(c.signal), p_idx(c.signal)
        I, Ip = a_idx(c.idler), p_idx(c.idler)
        # pump row: -chi * a_s * a_i
        J[P, S] -= chi * y[I]
        J[P, I] -= chi * y[S]
        J[Pp, Sp] -= chi * y[Ip]
        J[Pp, Ip] -= chi * y[Sp]
        # signal row: +chi * a_p * a_i^+
        J[S, P] += chi * y[Ip]
        J[S, Ip] += chi * y[P]
        J[Sp, Pp] += chi * y[I]
        J[Sp, I] += chi * y[Pp]
        # idler row: +chi * a_p * a_s^+
        J[I, P] += chi * y[Sp]
        J[I, Sp] += chi * y[P]
        J[Ip, Pp] += chi * y[S]
        J[Ip, S] += chi * y[Pp]
    return J


def noise_matrix(params: SystemParams, y: np.ndarray) -> np.ndarray:
    """Noise coefficient matrix B mapping the 12 real white noises onto the
    state derivatives. Complex entries are legal (principal square root)."""
    y = np.asarray(y, dtype=complex)
    B = np.zeros((DIM, DIM), dtype=complex)
    for c in COUPLINGS:
        chi = c.chi(params)
        amp = np.sqrt(0.5 * chi * y[a_idx(c.pump)] + 0j)
        amp_p = np.sqrt(0.5 * chi * y[p_idx(c.pump)] + 0j)
        k = c.noise_col
        B[a_idx(c.signal), k] += amp
        B[a_idx(c.signal), k + 1] += 1j * amp
        B[a_idx(c.idler), k] += amp
        B[a_idx(c.idler), k + 1] -= 1j * amp
        B[p_idx(c.signal), k + 2] += amp_p
        B[p_idx(c.signal), k + 3] += 1j * amp_p
        B[p_idx(c.idler), k + 2] += amp_p
        B[p_idx(c.idler), k + 3] -= 1j * amp_p
    return B
