"""Run configuration: plain-text key = value files.

Lines are ``key = value``; ``#`` starts a comment; blank lines are
ignored. Unknown keys are rejected. ``gamma`` accepts a single loss rate
or six comma-separated values; pump amplitudes accept anything python's
``complex()`` parses (e.g. ``58.1`` or ``1+2j``).

Recognized keys and defaults (defaults reproduce the reference regime,
six percent below threshold in amplitude):

    chi1 = 0.01            chi2 = 0.01
    eps1 = 58.0951949      eps2 = 58.0951949
    gamma = 1.0
    theta_min = -1.5707963267948966   theta_max = 4.71238898038469
    theta_count = 257
    omega_min = 0.01       omega_max = 2.0      omega_count = 200
    dt = 0.001             t_end = 110.0        transient = 10.0
    n_traj = 10000         seed = 0
    divergence_threshold = 1e6       sample_stride = 10
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .params import SystemParams
from .sde import SdeConfig

__all__ = ["RunConfig", "load_config", "DEFAULTS"]

DEFAULTS = {
    "chi1": 0.01,
    "chi2": 0.01,
    "eps1": 58.0951949424901,  # 0.94 * threshold for chi=0.01, gamma=1
    "eps2": 58.0951949424901,
    "gamma": (1.0,) * 6,
    "theta_min": -math.pi / 2,
    "theta_max": 3 * math.pi / 2,
    "theta_count": 257,
    "omega_min": 0.01,
    "omega_max": 2.0,
    "omega_count": 200,
    "dt": 1e-3,
    "t_end": 110.0,
    "transient": 10.0,
    "n_traj": 10_000,
    "seed": 0,
    "divergence_threshold": 1e6,
    "sample_stride": 10,
}

_INT_KEYS = {"theta_count", "omega_count", "n_traj", "seed", "sample_stride"}
_COMPLEX_KEYS = {"eps1", "eps2"}


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command needs: physics, grids and SDE controls."""

    params: SystemParams
    theta_min: float
    theta_max: float
    theta_count: int
    omega_min: float
    omega_max: float
    omega_count: int
    sde: SdeConfig

    def __post_init__(self) -> None:
        if self.theta_count < 1 or self.omega_count < 1:
            raise ValueError("grid counts must be positive")
        if self.theta_max < self.theta_min or self.omega_max < self.omega_min:
            raise ValueError("grid bounds must be ordered")

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.theta_count)

    @property
    def omegas(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.omega_count)

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, sde=replace(self.sde, seed=seed))


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key == "gamma":
        parts = [float(x) for x in raw.split(",")]
        if len(parts) == 1:
            return (parts[0],) * 6
        if len(parts) == 6:
            return tuple(parts)
        raise ValueError("gamma takes one value or six comma-separated values")
    if key in _COMPLEX_KEYS:
        return complex(raw)
    if key in _INT_KEYS:
        return int(raw)
    return float(raw)


def _build(values: dict) -> RunConfig:
    params = SystemParams(
        chi1=values["chi1"],
        chi2=values["chi2"],
        eps1=values["eps1"],
        eps2=values["eps2"],
        gamma=values["gamma"],
    )
    sde = SdeConfig(
        dt=values["dt"],
        t_end=values["t_end"],
        n_traj=values["n_traj"],
        seed=values["seed"],
        transient=values["transient"],
        divergence_threshold=values["divergence_threshold"],
        sample_stride=values["sample_stride"],
    )
    return RunConfig(
        params=params,
        theta_min=values["theta_min"],
        theta_max=values["theta_max"],
        theta_count=values["theta_count"],
        omega_min=values["omega_min"],
        omega_max=values["omega_max"],
        omega_count=values["omega_count"],
        sde=sde,
    )


def load_config(path: str | Path | None = None) -> RunConfig:
    """Parse a configuration file; ``None`` gives the defaults."""
    values = dict(DEFAULTS)
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"config file not found: {path}")
        for lineno, line in enumerate(path.read_text().splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, raw = (s.strip() for s in line.split("=", 1))
            if key not in DEFAULTS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _parse_value(key, raw)
    return _build(values)
