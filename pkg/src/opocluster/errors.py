"""Exception types shared across the package."""


class OpoClusterError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedRegimeError(OpoClusterError):
    """Raised when an operation requires the symmetric parameter regime
    (equal pumps, equal nonlinearities, uniform losses) and the supplied
    parameters fall outside it."""


class NoThresholdError(OpoClusterError):
    """Raised when the threshold bisection fails to bracket a stability
    change inside the search interval."""


class ConvergenceError(OpoClusterError):
    """Newton iteration failed to reach the residual tolerance.

    Carries the best residual seen so the caller can diagnose."""

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class SingularJacobianError(OpoClusterError):
    """The Jacobian became singular at a Newton iterate."""


class StabilityError(OpoClusterError):
    """The drift matrix has an eigenvalue with non-positive real part, so
    the stationary fluctuation spectrum does not exist."""
