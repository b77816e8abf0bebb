import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad_vec

from opocluster import (
    StabilityError,
    SystemParams,
    intracavity_spectrum,
    lifted_weights,
    linearize,
    output_joint_variance,
    quadrature_transform,
    standard_operators,
    stationary_covariance,
    trivial_steady_state,
)
from opocluster.dynamics import DIM

from conftest import CHI, EPS_C, GAMMA


def test_unpumped_spectrum_vanishes():
    p = SystemParams.symmetric(chi=CHI, eps=0.0, gamma=GAMMA)
    lin = linearize(p, trivial_steady_state(p))
    S = intracavity_spectrum(lin, 0.7).matrix
    assert np.max(np.abs(S)) == 0.0


def test_coherent_levels_at_zero_pump():
    p = SystemParams.symmetric(chi=CHI, eps=0.0, gamma=GAMMA)
    lin = linearize(p, trivial_steady_state(p))
    for op in standard_operators():
        for theta in (0.0, 0.4, np.pi / 2):
            v = output_joint_variance(lin, op, theta, 0.35)
            assert v == pytest.approx(op.coherent_level, abs=1e-12)


def test_spectrum_frequency_symmetry(ref_lin):
    for w in (0.1, 0.8, 1.7):
        Sp = intracavity_spectrum(ref_lin, w).matrix
        Sm = intracavity_spectrum(ref_lin, -w).matrix
        assert np.allclose(Sm, np.conj(Sp), atol=1e-13)


def test_quadrature_transform_structure():
    Q = quadrature_transform(0.3)
    # each quadrature row touches only its own mode's pair
    for m in range(1, 7):
        k = 2 * (m - 1)
        row = Q[k].copy()
        row[k] = 0
        row[k + 1] = 0
        assert np.max(np.abs(row)) == 0
    # X row at theta=0 is (1, 1); Y row is (-i, i)
    Q0 = quadrature_transform(0.0)
    assert Q0[0, 0] == 1 and Q0[0, 1] == 1
    assert Q0[1, 0] == -1j and Q0[1, 1] == 1j


def test_lifted_weights_match_transform():
    theta = 0.77
    Q = quadrature_transform(theta)
    for op in standard_operators():
        c = np.zeros(DIM)
        for mode, w, q in zip(op.modes, op.weights, op.quad_types):
            k = 2 * (mode - 1) + (0 if q == "X" else 1)
            c[k] = w
        assert np.allclose(lifted_weights(op, theta), Q.T @ c, atol=1e-14)


def test_spectral_integral_matches_lyapunov(half_params):
    # the OU consistency identity: integral of S over all frequencies
    # divided by 2 pi returns the static covariance
    lin = linearize(half_params, trivial_steady_state(half_params))
    C = stationary_covariance(lin)
    W = 200.0
    val, _ = quad_vec(
        lambda w: intracavity_spectrum(lin, w).matrix.real,
        -W, W, epsabs=1e-10, epsrel=1e-10,
    )
    # analytic tail of the 1/w^2 falloff beyond the truncation
    tail = lin.diffusion / (np.pi * W)
    est = val / (2 * np.pi) + tail
    scale = max(1.0, float(np.max(np.abs(C))))
    assert np.max(np.abs(est - C)) / scale < 1e-4


@settings(max_examples=20, deadline=None)
@given(
    theta=st.floats(min_value=-np.pi, max_value=np.pi),
    omega=st.floats(min_value=0.01, max_value=2.0),
)
def test_variance_pi_periodic_and_real(ref_lin, theta, omega):
    ops = standard_operators()
    S = intracavity_spectrum(ref_lin, omega)
    for op in ops:
        v = output_joint_variance(ref_lin, op, theta, omega, spectrum=S)
        v_shift = output_joint_variance(ref_lin, op, theta + np.pi, omega, spectrum=S)
        assert v == pytest.approx(v_shift, rel=1e-9, abs=1e-9)
        assert v >= 0.0


def test_pair_symmetry_modest_grid(ref_lin):
    ops = {op.label: op for op in standard_operators()}
    for theta in np.linspace(-np.pi / 2, 3 * np.pi / 2, 17):
        for omega in np.linspace(0.01, 2.0, 9):
            S = intracavity_spectrum(ref_lin, omega)
            v1 = output_joint_variance(ref_lin, ops["O1"], theta, omega, spectrum=S)
            v3 = output_joint_variance(ref_lin, ops["O3"], theta, omega, spectrum=S)
            v2 = output_joint_variance(ref_lin, ops["O2"], theta, omega, spectrum=S)
            v4 = output_joint_variance(ref_lin, ops["O4"], theta, omega, spectrum=S)
            assert abs(v1 - v3) < 1e-10
            assert abs(v2 - v4) < 1e-10


def test_spectrum_requires_stability():
    p = SystemParams.symmetric(chi=CHI, eps=1.5 * EPS_C, gamma=GAMMA)
    lin = linearize(p, trivial_steady_state(p))
    with pytest.raises(StabilityError):
        intracavity_spectrum(lin, 0.5)


def test_mismatched_precomputed_spectrum_rejected(ref_lin):
    op = standard_operators()[0]
    S = intracavity_spectrum(ref_lin, 0.5)
    with pytest.raises(ValueError):
        output_joint_variance(ref_lin, op, 0.0, 0.6, spectrum=S)
