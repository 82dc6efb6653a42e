"""
Approximate entangled final state of the fully quantum approach.

After the passage the beam and oscillator share the two-branch state

    |Psi> = c0 |k0>|0> + c1 |k1>|1>,    c1 = d1 sqrt(P1),  |d1| = 1

where P1 is the fully quantum first-order probability and d1 the phase of
the first-order coefficient. By default the state is renormalized so that
|c0|^2 + |c1|^2 = 1; with normalize=False the raw first-order state
(c0 = 1, norm^2 = 1 + P1) is kept instead.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple
import logging

import numpy as np
import pandas as pd

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.perturbation.first_order import (
    VALIDITY_THRESHOLD,
    drive_matrix_element,
    first_order_coefficient,
    interaction_interval,
    p1_full,
)
from src.tdse.grid import ho_wavefunction
from src.utils.error_handling import ParameterError, PerturbationRegimeError

logger = logging.getLogger(__name__)

BRANCH_COLUMNS = ["y", "density_k0", "density_k1", "total"]

NORM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FinalStateAmplitudes:
    """Branch amplitudes of the scattered two-particle state."""
    c0: complex
    c1: complex
    k0: float
    k1: float
    e_total: float
    normalized: bool = True

    def __post_init__(self):
        if self.normalized and abs(self.norm_squared - 1.0) > NORM_TOLERANCE:
            raise ParameterError(
                "c0, c1", f"normalized state has |c0|^2 + |c1|^2 = {self.norm_squared:.15g}"
            )

    @property
    def norm_squared(self) -> float:
        return abs(self.c0) ** 2 + abs(self.c1) ** 2

    @property
    def weights(self) -> Tuple[float, float]:
        """Born probabilities of the k0 and k1 branches."""
        norm = self.norm_squared
        return abs(self.c0) ** 2 / norm, abs(self.c1) ** 2 / norm

    @property
    def d1(self) -> complex:
        """Unit phase of the scattered branch (0 when it is empty)."""
        magnitude = abs(self.c1)
        return self.c1 / magnitude if magnitude > 0 else 0j

    def is_perturbative(self) -> bool:
        return abs(self.c1) <= abs(self.c0)

    def to_record(self) -> Dict[str, object]:
        """JSON-ready record."""
        p_k0, p_k1 = self.weights
        return {
            "c0_re": self.c0.real,
            "c0_im": self.c0.imag,
            "c1_re": self.c1.real,
            "c1_im": self.c1.imag,
            "k0": self.k0,
            "k1": self.k1,
            "e_total": self.e_total,
            "normalized": self.normalized,
            "norm_squared": self.norm_squared,
            "p_k0": p_k0,
            "p_k1": p_k1,
        }


def initial_energy(k0: float, params: ModelParams) -> float:
    """E_i = hbar^2 k0^2 / 2m + hbar omega0 / 2."""
    return params.hbar ** 2 * k0 ** 2 / (2.0 * params.m) + 0.5 * params.hbar * params.omega0


def scattering_phase(params: ModelParams, f: WindowFunction, k0: float) -> complex:
    """
    Unit phase d1 of the first-order coefficient for a beam of wavenumber k0.

    The coefficient is evaluated by quadrature with the beam speed hbar k0 / m.

    Returns:
        d1 with |d1| = 1, or 0 when the coefficient vanishes
    """
    driven = params.with_(v=params.speed_from_wavenumber(k0))
    if driven.alpha == 0:
        return 0j
    t0, t1 = interaction_interval(driven, f)
    coefficient = first_order_coefficient(
        drive_matrix_element(driven, f), driven.omega0, t0, t1,
        hbar=driven.hbar, points=[0.0],
    )
    magnitude = abs(coefficient)
    return coefficient / magnitude if magnitude > 0 else 0j


def build_final_state(params: ModelParams,
                      f: WindowFunction,
                      k0: float,
                      normalize: bool = True,
                      allow_nonperturbative: bool = False,
                      validity_threshold: float = VALIDITY_THRESHOLD) -> FinalStateAmplitudes:
    """
    Build the two-branch final state for an incident wavenumber k0.

    Args:
        params: Model parameters (params.v is replaced by hbar k0 / m)
        f: Window function
        k0: Incident wavenumber
        normalize: Renormalize so that |c0|^2 + |c1|^2 = 1
        allow_nonperturbative: Accept P1 above the validity threshold
        validity_threshold: Largest P1 accepted without allow_nonperturbative

    Returns:
        FinalStateAmplitudes

    Raises:
        ChannelClosedError: If the inelastic channel is closed at k0
        PerturbationRegimeError: If P1 exceeds the validity threshold
    """
    transition = p1_full(params, f, k0, validity_threshold=math.inf)
    p1 = transition.p1
    if p1 >= validity_threshold:
        if not allow_nonperturbative:
            raise PerturbationRegimeError(p1, validity_threshold)
        logger.warning(f"Building final state outside the perturbative regime (P1={p1:.4g})")

    d1 = scattering_phase(params, f, k0)
    c1 = d1 * math.sqrt(p1)
    c0 = 1.0 + 0j
    if normalize:
        scale = 1.0 / math.sqrt(1.0 + p1)
        c0, c1 = c0 * scale, c1 * scale

    state = FinalStateAmplitudes(
        c0=c0,
        c1=c1,
        k0=transition.kinematics.k0,
        k1=transition.kinematics.k1,
        e_total=initial_energy(k0, params),
        normalized=normalize,
    )
    logger.debug(f"Final state at k0={k0:g}: |c1|^2={abs(c1) ** 2:.6e}, d1={d1:.6f}")
    return state


def reduce_to_oscillator(state: FinalStateAmplitudes, t: float, params: ModelParams) -> Tuple[complex, complex]:
    """
    Oscillator branch amplitudes once the beam coordinate is integrated out.

        a0(t) = c0 exp(-i omega0 t / 2),  a1(t) = c1 exp(-3 i omega0 t / 2)
    """
    a0 = state.c0 * cmath.exp(-0.5j * params.omega0 * t)
    a1 = state.c1 * cmath.exp(-1.5j * params.omega0 * t)
    return a0, a1


def expectation_y_reduced(state: FinalStateAmplitudes, t, params: ModelParams):
    """
    <y>(t) = sqrt(2 hbar / mu omega0) Re[c0* c1 exp(-i omega0 t)] / norm^2.

    Args:
        state: Final state
        t: Time or array of times
        params: Model parameters

    Returns:
        <y> with the shape of t
    """
    scale = math.sqrt(2.0 * params.hbar / (params.mu * params.omega0)) / state.norm_squared
    phase = np.exp(-1j * params.omega0 * np.asarray(t, dtype=float))
    values = scale * np.real(np.conj(state.c0) * state.c1 * phase)
    return float(values) if np.ndim(values) == 0 else values


def reduced_amplitude(state: FinalStateAmplitudes, params: ModelParams) -> float:
    """Amplitude of the <y>(t) oscillation, sqrt(2 hbar / mu omega0) |c0 c1| / norm^2."""
    return (
        math.sqrt(2.0 * params.hbar / (params.mu * params.omega0))
        * abs(state.c0) * abs(state.c1) / state.norm_squared
    )


def default_y_values(params: ModelParams, half_width: float = 8.0, points: int = 401) -> np.ndarray:
    """Symmetric positions +/- half_width sigma_y."""
    if points < 2:
        raise ParameterError("numerics.y_prime_points", f"need at least 2 points, got {points}")
    return np.linspace(-half_width * params.sigma_y, half_width * params.sigma_y, points)


def branch_density_table(state: FinalStateAmplitudes,
                         params: ModelParams,
                         y_values: Optional[np.ndarray] = None) -> pd.DataFrame:
    """
    Stationary oscillator density split by beam branch.

    Columns y, density_k0 = |c0 psi0(y)|^2, density_k1 = |c1 psi1(y)|^2 and
    their sum, all divided by the state norm.
    """
    y = default_y_values(params) if y_values is None else np.asarray(y_values, dtype=float)
    p_k0, p_k1 = state.weights
    density_k0 = p_k0 * ho_wavefunction(0, y, params) ** 2
    density_k1 = p_k1 * ho_wavefunction(1, y, params) ** 2
    return pd.DataFrame({
        "y": y,
        "density_k0": density_k0,
        "density_k1": density_k1,
        "total": density_k0 + density_k1,
    }, columns=BRANCH_COLUMNS)
