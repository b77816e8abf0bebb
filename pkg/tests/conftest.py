import numpy as np
import pytest

from opocluster import SystemParams, linearize, trivial_steady_state

GAMMA = 1.0
CHI = 0.01
EPS_C = 61.8033988749895  # gamma^2 / (chi * (sqrt(5)+1)/2)
EPS_REF = 0.94 * EPS_C


@pytest.fixture(scope="session")
def ref_params():
    """Reference below-threshold operating point."""
    return SystemParams.symmetric(chi=CHI, eps=EPS_REF, gamma=GAMMA)


@pytest.fixture(scope="session")
def ref_lin(ref_params):
    return linearize(ref_params, trivial_steady_state(ref_params))


@pytest.fixture(scope="session")
def half_params():
    return SystemParams.symmetric(chi=CHI, eps=0.5 * EPS_C, gamma=GAMMA)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
