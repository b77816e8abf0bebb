"""Two-pump, six-mode optical parametric oscillator below and above
threshold: classical steady states, linearized fluctuation spectra,
joint-quadrature squeezing certification and a full nonlinear positive-P
stochastic integrator.
"""

__version__ = "0.1.0"

from .config import RunConfig, load_config
from .errors import (
    ConvergenceError,
    NoThresholdError,
    OpoClusterError,
    SingularJacobianError,
    StabilityError,
    UnsupportedRegimeError,
)
from .linearize import (
    LinearizedModel,
    build_diffusion,
    build_drift,
    linearize,
    stability_eigenvalues,
    stationary_covariance,
)
from .operators import (
    C1,
    C2,
    JointOperator,
    SpectralGrid,
    fixed_frequency_trace,
    standard_operators,
    sweep,
)
from .params import COUPLINGS, Coupling, CouplingTable, SystemParams
from .sde import (
    EnsembleMoments,
    SdeConfig,
    Trajectory,
    ensemble_covariance,
    integrate_trajectory,
    lyapunov_reference,
)
from .spectra import (
    SpectralMatrix,
    intracavity_spectrum,
    lifted_weights,
    output_joint_variance,
    quadrature_transform,
)
from .steady import SteadyState, solve_steady_state, trivial_steady_state
from .threshold import stability_margin_at, threshold_pump

__all__ = [
    "__version__",
    "RunConfig",
    "load_config",
    "OpoClusterError",
    "UnsupportedRegimeError",
    "NoThresholdError",
    "ConvergenceError",
    "SingularJacobianError",
    "StabilityError",
    "SystemParams",
    "Coupling",
    "CouplingTable",
    "COUPLINGS",
    "SteadyState",
    "trivial_steady_state",
    "solve_steady_state",
    "LinearizedModel",
    "build_drift",
    "build_diffusion",
    "stability_eigenvalues",
    "linearize",
    "stationary_covariance",
    "threshold_pump",
    "stability_margin_at",
    "SpectralMatrix",
    "intracavity_spectrum",
    "quadrature_transform",
    "lifted_weights",
    "output_joint_variance",
    "C1",
    "C2",
    "JointOperator",
    "standard_operators",
    "SpectralGrid",
    "sweep",
    "fixed_frequency_trace",
    "SdeConfig",
    "Trajectory",
    "EnsembleMoments",
    "integrate_trajectory",
    "ensemble_covariance",
    "lyapunov_reference",
]
