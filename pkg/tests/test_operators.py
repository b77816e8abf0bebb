import math

import numpy as np
import pytest

from opocluster import (
    C1,
    C2,
    SystemParams,
    fixed_frequency_trace,
    linearize,
    standard_operators,
    sweep,
    trivial_steady_state,
)

from conftest import CHI, EPS_C, GAMMA


def test_golden_ratio_identities():
    assert C1 * C2 == pytest.approx(1.0, abs=1e-15)
    assert C2 - C1 == pytest.approx(1.0, abs=1e-15)
    assert C1 * C1 + C1 - 1.0 == pytest.approx(0.0, abs=1e-15)
    assert C2 * C2 - C2 - 1.0 == pytest.approx(0.0, abs=1e-15)


def test_coherent_levels():
    ops = {op.label: op for op in standard_operators()}
    lvl_13 = 2.0 * (C1 * C1 + 1.0)
    lvl_24 = 2.0 * (C2 * C2 + 1.0)
    assert ops["O1"].coherent_level == pytest.approx(lvl_13, abs=1e-12)
    assert ops["O3"].coherent_level == pytest.approx(lvl_13, abs=1e-12)
    assert ops["O2"].coherent_level == pytest.approx(lvl_24, abs=1e-12)
    assert ops["O4"].coherent_level == pytest.approx(lvl_24, abs=1e-12)
    # the printed reference values
    assert lvl_13 == pytest.approx(2.764, abs=1e-3)
    assert lvl_24 == pytest.approx(7.236, abs=1e-3)


def test_weight_vectors_orthogonal():
    W = np.array([op.weights for op in standard_operators()])
    G = W @ W.T
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) < 1e-12


def test_trace_flat_at_zero_pump():
    p = SystemParams.symmetric(chi=CHI, eps=0.0, gamma=GAMMA)
    lin = linearize(p, trivial_steady_state(p))
    thetas = np.linspace(-np.pi / 2, 3 * np.pi / 2, 33)
    trace = fixed_frequency_trace(lin, 0.35, thetas)
    for op in standard_operators():
        assert np.allclose(trace[op.label], op.coherent_level, atol=1e-12)
        assert np.allclose(trace[op.label + "_dB"], 0.0, atol=1e-10)


def test_squeezing_deepens_toward_threshold():
    thetas = np.array([0.0])
    prev = {op.label: math.inf for op in standard_operators()}
    for f in (0.5, 0.7, 0.94):
        p = SystemParams.symmetric(chi=CHI, eps=f * EPS_C, gamma=GAMMA)
        lin = linearize(p, trivial_steady_state(p))
        trace = fixed_frequency_trace(lin, 0.35, thetas)
        for op in standard_operators():
            v = trace[op.label][0]
            assert v < prev[op.label]
            prev[op.label] = v


def test_sweep_shapes_and_minima(ref_lin):
    thetas = np.linspace(-np.pi / 2, 3 * np.pi / 2, 33)
    omegas = np.linspace(0.01, 2.0, 25)
    grid = sweep(ref_lin, thetas, omegas)
    for op in standard_operators():
        V = grid.values[op.label]
        assert V.shape == (33, 25)
        th, w, v = grid.minima[op.label]
        assert thetas[0] <= th <= thetas[-1]
        assert omegas[0] <= w <= omegas[-1]
        # refined minimum must not exceed the best grid value
        assert v <= V.min() + 1e-12
    th, w, v = grid.sum_minimum
    assert v <= grid.sum_values.min() + 1e-12
    assert np.allclose(
        grid.sum_values,
        sum(grid.values[op.label] for op in standard_operators()),
    )


def test_pair_values_identical_on_grid(ref_lin):
    thetas = np.linspace(-np.pi / 2, 3 * np.pi / 2, 17)
    omegas = np.linspace(0.01, 2.0, 9)
    grid = sweep(ref_lin, thetas, omegas)
    assert np.max(np.abs(grid.values["O1"] - grid.values["O3"])) < 1e-10
    assert np.max(np.abs(grid.values["O2"] - grid.values["O4"])) < 1e-10


def test_empty_grid_rejected(ref_lin):
    with pytest.raises(ValueError):
        sweep(ref_lin, np.array([]), np.array([0.5]))
