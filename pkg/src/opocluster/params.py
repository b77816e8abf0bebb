"""Physical parameters of the two-pump, six-mode intracavity system.

Modes 1 and 2 are externally pumped; modes 3-6 are the low-frequency
outputs. Pump 1 drives the down-conversion pairs (4,5) and (3,6), pump 2
drives (5,6). All operations in the package take a ``SystemParams``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .errors import UnsupportedRegimeError

__all__ = ["SystemParams", "CouplingTable", "Coupling", "COUPLINGS"]


@dataclass(frozen=True)
class Coupling:
    """One parametric down-conversion channel: pump mode -> (signal, idler).

    ``noise_col`` is the first of the four real-noise columns assigned to
    this channel in the 12-column noise matrix (two for the alpha sector,
    two for the plus sector).
    """

    pump: int
    signal: int
    idler: int
    chi_index: int  # 1 or 2, selects chi1/chi2
    noise_col: int

    def chi(self, params: "SystemParams") -> float:
        return params.chi1 if self.chi_index == 1 else params.chi2


class CouplingTable:
    """The fixed set of three down-conversion channels of this system."""

    def __init__(self) -> None:
        self.entries: Tuple[Coupling, ...] = (
            Coupling(pump=2, signal=5, idler=6, chi_index=2, noise_col=0),
            Coupling(pump=1, signal=4, idler=5, chi_index=1, noise_col=4),
            Coupling(pump=1, signal=3, idler=6, chi_index=1, noise_col=8),
        )
        for c in self.entries:
            if c.signal == c.idler:
                raise ValueError("degenerate channel not supported")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


COUPLINGS = CouplingTable()


@dataclass(frozen=True)
class SystemParams:
    """Pump amplitudes, nonlinearities and per-mode loss rates.

    ``gamma`` holds the six cavity loss rates in mode order. Pump
    amplitudes may be complex, although all reference results in this
    package use real positive pumps.
    """

    chi1: float
    chi2: float
    eps1: complex
    eps2: complex
    gamma: Tuple[float, float, float, float, float, float]

    def __post_init__(self) -> None:
        if not (self.chi1 > 0 and self.chi2 > 0):
            raise ValueError("nonlinearities must be strictly positive")
        if len(self.gamma) != 6:
            raise ValueError("gamma must hold six loss rates")
        if not all(g > 0 for g in self.gamma):
            raise ValueError("loss rates must be strictly positive")
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))
        object.__setattr__(self, "eps1", complex(self.eps1))
        object.__setattr__(self, "eps2", complex(self.eps2))

    @classmethod
    def symmetric(cls, chi: float, eps: complex, gamma: float) -> "SystemParams":
        """Equal pumps, equal nonlinearities, uniform losses."""
        return cls(chi1=chi, chi2=chi, eps1=eps, eps2=eps, gamma=(gamma,) * 6)

    @property
    def is_symmetric(self) -> bool:
        g = self.gamma
        return (
            self.chi1 == self.chi2
            and self.eps1 == self.eps2
            and all(gi == g[0] for gi in g)
        )

    @property
    def uniform_gamma(self) -> float:
        """The common loss rate; raises if losses differ."""
        g = self.gamma
        if not all(gi == g[0] for gi in g):
            raise UnsupportedRegimeError("loss rates are not uniform")
        return g[0]

    @property
    def gamma_array(self) -> np.ndarray:
        return np.asarray(self.gamma, dtype=float)

    def with_pump(self, eps: complex) -> "SystemParams":
        """Copy with both pump amplitudes set to ``eps``."""
        return replace(self, eps1=eps, eps2=eps)
