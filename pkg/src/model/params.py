"""
Physical parameters of the beam/oscillator model.

The model Hamiltonian couples a free beam particle (coordinate x, mass m)
to a harmonic oscillator (coordinate y, reduced mass mu, frequency omega0)
through H1 = -alpha * y * f(x).
"""

import math
from dataclasses import dataclass, replace
import logging

from src.utils.error_handling import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelParams:
    """Physical constants, coupling strength and beam speed."""

    hbar: float = 1.0
    m: float = 1.0
    mu: float = 100.0
    omega0: float = 1.0
    alpha: float = 1.0
    v: float = 7.0

    def __post_init__(self):
        """Validate parameter ranges."""
        for name in ("hbar", "m", "mu", "omega0", "alpha", "v"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParameterError(name, f"must be a finite number, got {value!r}")

        for name in ("hbar", "m", "mu", "omega0"):
            if getattr(self, name) <= 0:
                raise ParameterError(name, f"must be positive, got {getattr(self, name)}")

        if self.v == 0:
            raise ParameterError("v", "beam speed must be non-zero")

    @classmethod
    def natural_units(cls, v: float = 7.0, alpha: float = 1.0) -> "ModelParams":
        """
        Preset with hbar = omega0 = m = 1 and mu = 100.

        Args:
            v: Beam speed
            alpha: Coupling constant

        Returns:
            ModelParams instance
        """
        return cls(hbar=1.0, m=1.0, mu=100.0, omega0=1.0, alpha=alpha, v=v)

    def with_(self, **changes) -> "ModelParams":
        """Return a copy with some fields replaced."""
        return replace(self, **changes)

    @property
    def sigma_y(self) -> float:
        """Ground-state width sqrt(hbar / (mu * omega0))."""
        return math.sqrt(self.hbar / (self.mu * self.omega0))

    @property
    def k0(self) -> float:
        """Incident beam wavenumber m * v / hbar."""
        return self.m * self.v / self.hbar

    @property
    def quantum_energy(self) -> float:
        """One oscillator quantum, hbar * omega0."""
        return self.hbar * self.omega0

    def speed_from_wavenumber(self, k0: float) -> float:
        """Classical beam speed hbar * k0 / m."""
        return self.hbar * k0 / self.m

    def to_dict(self) -> dict:
        """Flat dictionary of the parameter values."""
        return {
            "hbar": self.hbar,
            "m": self.m,
            "mu": self.mu,
            "omega0": self.omega0,
            "alpha": self.alpha,
            "v": self.v,
        }
