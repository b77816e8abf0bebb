import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opocluster import (
    COUPLINGS,
    StabilityError,
    SystemParams,
    build_diffusion,
    build_drift,
    linearize,
    stability_eigenvalues,
    stationary_covariance,
    trivial_steady_state,
)
from opocluster.dynamics import DIM, a_idx, deterministic_rhs, jacobian, p_idx

from conftest import CHI, EPS_C, GAMMA

FD_STEP = 1e-5


def _fd_jacobian(params, y):
    J = np.zeros((DIM, DIM), dtype=complex)
    for k in range(DIM):
        e = np.zeros(DIM, dtype=complex)
        e[k] = FD_STEP
        J[:, k] = (
            deterministic_rhs(params, y + e) - deterministic_rhs(params, y - e)
        ) / (2 * FD_STEP)
    return J


def test_jacobian_matches_finite_differences(ref_params, rng):
    base = trivial_steady_state(ref_params).vector
    for _ in range(25):
        y = base + rng.normal(size=DIM) + 1j * rng.normal(size=DIM)
        J = jacobian(ref_params, y)
        fd = _fd_jacobian(ref_params, y)
        scale = max(1.0, float(np.max(np.abs(J))))
        assert np.max(np.abs(J - fd)) / scale < 1e-6


def test_drift_is_minus_jacobian(ref_params):
    y = trivial_steady_state(ref_params).vector
    assert np.array_equal(build_drift(ref_params, y), -jacobian(ref_params, y))


def test_diffusion_symmetric_and_hollow(ref_params):
    ss = trivial_steady_state(ref_params)
    D = build_diffusion(ref_params, ss)
    assert np.array_equal(D, D.T)
    assert np.max(np.abs(np.diag(D))) == 0.0


def test_diffusion_reference_entry():
    # at the trivial state, the (da3, da6) entry is chi1 * alpha1_bar
    p = SystemParams.symmetric(chi=0.01, eps=58.1, gamma=1.0)
    D = build_diffusion(p, trivial_steady_state(p))
    assert D[a_idx(3), a_idx(6)] == pytest.approx(0.581, abs=1e-12)
    assert D[p_idx(3), p_idx(6)] == pytest.approx(0.581, abs=1e-12)


def test_diffusion_sparsity_from_coupling_table(ref_params):
    """Nonzero positions of D come only from the three channels: the
    signal/idler pair of each channel in each sector, both orientations."""
    ss = trivial_steady_state(ref_params)
    D = build_diffusion(ref_params, ss)
    allowed = set()
    for c in COUPLINGS:
        allowed.add((a_idx(c.signal), a_idx(c.idler)))
        allowed.add((a_idx(c.idler), a_idx(c.signal)))
        allowed.add((p_idx(c.signal), p_idx(c.idler)))
        allowed.add((p_idx(c.idler), p_idx(c.signal)))
    nz = {(i, j) for i in range(DIM) for j in range(DIM) if D[i, j] != 0}
    assert nz == allowed
    # no correlation between alpha and plus sectors
    for i in range(DIM):
        for j in range(DIM):
            if (i + j) % 2 == 1:
                assert D[i, j] == 0


def test_diffusion_amplitude_from_pump(ref_params):
    ss = trivial_steady_state(ref_params)
    D = build_diffusion(ref_params, ss)
    a1 = ss.alpha[0]
    a2 = ss.alpha[1]
    assert D[a_idx(4), a_idx(5)] == pytest.approx(CHI * a1)
    assert D[a_idx(5), a_idx(6)] == pytest.approx(CHI * a2)


def test_trivial_drift_entries(ref_params):
    A = build_drift(ref_params, trivial_steady_state(ref_params))
    # diagonal carries the loss rates
    assert np.allclose(np.diag(A), GAMMA)
    # down-conversion entry: d(da3)/dt contains chi1 alpha1 d(da6+)
    assert A[a_idx(3), p_idx(6)] == pytest.approx(-CHI * (0.94 * EPS_C) / GAMMA)


@settings(max_examples=15, deadline=None)
@given(f=st.floats(min_value=0.05, max_value=0.99))
def test_stability_margin_decreases_with_pump(f):
    p = SystemParams.symmetric(chi=CHI, eps=f * EPS_C, gamma=GAMMA)
    A = build_drift(p, trivial_steady_state(p))
    margin = stability_eigenvalues(A).real.min()
    expected = GAMMA * (1.0 - f)  # linear in pump through the soft pair
    assert margin == pytest.approx(expected, rel=1e-9)


def test_stationary_covariance_solves_lyapunov(ref_lin):
    C = stationary_covariance(ref_lin)
    A, D = ref_lin.drift, ref_lin.diffusion
    res = A @ C + C @ A.T - D
    assert np.max(np.abs(res)) < 1e-10 * max(1.0, np.max(np.abs(D)))


def test_covariance_requires_stability():
    p = SystemParams.symmetric(chi=CHI, eps=1.5 * EPS_C, gamma=GAMMA)
    lin = linearize(p, trivial_steady_state(p))
    assert not lin.is_stable
    with pytest.raises(StabilityError):
        stationary_covariance(lin)


def test_nonfinite_drift_rejected():
    A = np.zeros((12, 12))
    A[0, 0] = np.nan
    with pytest.raises(ValueError):
        stability_eigenvalues(A)
