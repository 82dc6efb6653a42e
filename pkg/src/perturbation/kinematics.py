"""
Energy-conserving kinematics of one inelastic event.

The beam enters with wavenumber k0 and leaves with k1 after handing one
quantum to the oscillator:

    hbar^2 (k1^2 - k0^2) / 2m + hbar omega0 = 0
"""

import math
from dataclasses import dataclass
import logging

from src.model.params import ModelParams
from src.utils.error_handling import ChannelClosedError, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScatteringKinematics:
    """Incident and scattered wavenumbers of the 0 -> 1 transition."""
    k0: float
    k1: float
    delta_k: float
    delta_k_approx: float

    def energy_residual(self, params: ModelParams) -> float:
        """hbar^2 (k1^2 - k0^2) / 2m + hbar omega0; zero up to rounding."""
        return (
            params.hbar ** 2 * (self.k1 ** 2 - self.k0 ** 2) / (2.0 * params.m)
            + params.hbar * params.omega0
        )

    def to_record(self) -> dict:
        return {
            "k0": self.k0,
            "k1": self.k1,
            "delta_k": self.delta_k,
            "delta_k_approx": self.delta_k_approx,
        }


def threshold_wavenumber(params: ModelParams) -> float:
    """Smallest k0 for which hbar^2 k0^2 / 2m >= hbar omega0."""
    return math.sqrt(2.0 * params.m * params.omega0 / params.hbar)


def scattered_wavenumber(k0: float, params: ModelParams) -> ScatteringKinematics:
    """
    Solve energy conservation for the scattered wavenumber.

    Args:
        k0: Incident wavenumber (positive)
        params: Model parameters

    Returns:
        ScatteringKinematics with k1 = sqrt(k0^2 - 2 m omega0 / hbar)

    Raises:
        ParameterError: If k0 is not a positive finite number
        ChannelClosedError: If the beam cannot afford one quantum
    """
    if not math.isfinite(k0) or k0 <= 0:
        raise ParameterError("k0", f"must be a positive wavenumber, got {k0}")

    gap = 2.0 * params.m * params.omega0 / params.hbar
    if k0 ** 2 < gap:
        raise ChannelClosedError(k0, math.sqrt(gap))

    k1 = math.sqrt(k0 ** 2 - gap)
    v = params.hbar * k0 / params.m
    kinematics = ScatteringKinematics(
        k0=k0,
        k1=k1,
        delta_k=k1 - k0,
        delta_k_approx=-params.omega0 / v,
    )
    logger.debug(f"Kinematics: k0={k0:.6g}, k1={k1:.6g}, delta_k={kinematics.delta_k:.6g}")
    return kinematics
