"""
Partial-projection measurements on the two-branch final state and Monte
Carlo sampling of joint (beam momentum, oscillator position) outcomes.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple
import logging

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid
from scipy.special import expit
from scipy.stats import chi2_contingency

from src.model.params import ModelParams
from src.tdse.grid import ho_log_density, ho_wavefunction
from src.utils.error_handling import MeasurementError, ParameterError
from .final_state import FinalStateAmplitudes, default_y_values

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["y_prime", "p_k0", "p_k1"]
TALLY_COLUMNS = ["k_branch", "y_value"]

# Relative tolerance when matching a measured wavenumber to k0 or k1
WAVENUMBER_TOLERANCE = 1e-12

# Inverse-CDF sampling grid, in sigma_y on either side of the origin
SAMPLING_HALF_WIDTH = 12.0
SAMPLING_POINTS = 8001


class Observable(str, Enum):
    BEAM_MOMENTUM = "beam_momentum"
    OSCILLATOR_POSITION = "oscillator_position"


class MeasurementOrder(str, Enum):
    BEAM_FIRST = "beam_first"
    OSCILLATOR_FIRST = "oscillator_first"


@dataclass(frozen=True)
class MeasurementOutcome:
    """
    Result of one partial projection.

    For a beam-momentum outcome `probability` is its Born probability and the
    posterior keeps a single branch, so the oscillator is left in level 0 or 1.
    For an oscillator-position outcome `probability` is None, `density` holds
    the joint probability density at y' and the posterior carries the
    normalized beam amplitudes conditioned on y'.
    """
    observable: Observable
    value: float
    posterior: FinalStateAmplitudes
    probability: Optional[float] = None
    density: Optional[float] = None

    @property
    def oscillator_level(self) -> Optional[int]:
        """Oscillator level left behind by a beam measurement."""
        if self.observable != Observable.BEAM_MOMENTUM:
            return None
        return 1 if abs(self.posterior.c1) > 0 else 0

    @property
    def beam_weights(self) -> Tuple[float, float]:
        """Posterior (P(k0), P(k1))."""
        return self.posterior.weights

    def to_record(self) -> Dict[str, object]:
        record = {
            "observable": self.observable.value,
            "value": self.value,
            "probability": self.probability,
            "density": self.density,
            "oscillator_level": self.oscillator_level,
        }
        record.update({f"posterior_{key}": value for key, value in self.posterior.to_record().items()})
        return record


def measure_beam_momentum(state: FinalStateAmplitudes, outcome: float) -> MeasurementOutcome:
    """
    Project the beam onto |k0> or |k1>.

    Args:
        state: Final state
        outcome: Measured wavenumber, k0 or k1

    Returns:
        MeasurementOutcome whose posterior contains only the selected branch

    Raises:
        MeasurementError: If outcome is neither k0 nor k1
    """
    p_k0, p_k1 = state.weights

    if math.isclose(outcome, state.k0, rel_tol=WAVENUMBER_TOLERANCE):
        probability = p_k0
        c0, c1 = 1.0 + 0j, 0j
    elif math.isclose(outcome, state.k1, rel_tol=WAVENUMBER_TOLERANCE):
        probability = p_k1
        c0, c1 = 0j, state.d1 if abs(state.d1) > 0 else 1.0 + 0j
    else:
        raise MeasurementError(
            f"Beam wavenumber {outcome:.6g} is not an allowed outcome (k0={state.k0:.6g}, k1={state.k1:.6g})"
        )

    posterior = FinalStateAmplitudes(c0=c0, c1=c1, k0=state.k0, k1=state.k1, e_total=state.e_total)
    return MeasurementOutcome(
        observable=Observable.BEAM_MOMENTUM,
        value=outcome,
        posterior=posterior,
        probability=probability,
    )


def log_branch_ratio(state: FinalStateAmplitudes, y_prime, params: ModelParams):
    """
    log of |c1 psi1(y')|^2 / |c0 psi0(y')|^2 = log[2 (|c1|^2/|c0|^2) (y'/sigma_y)^2].

    -inf at y' = 0 or when c1 = 0, +inf when c0 = 0.
    """
    y = np.asarray(y_prime, dtype=float)
    p_k0, p_k1 = state.weights
    with np.errstate(divide="ignore"):
        log_weights = np.log(p_k1) - np.log(p_k0)
        return log_weights + ho_log_density(1, y, params) - ho_log_density(0, y, params)


def measure_oscillator_position(state: FinalStateAmplitudes,
                                y_prime: float,
                                params: ModelParams) -> MeasurementOutcome:
    """
    Project the oscillator onto position y' and update the beam weights.

    P(k1|y') = r / (1 + r) with r the branch ratio, evaluated in the log domain
    so that the far tails do not underflow.

    Args:
        state: Final state
        y_prime: Measured position
        params: Model parameters

    Returns:
        MeasurementOutcome with the conditioned beam amplitudes as posterior

    Raises:
        ParameterError: If y_prime is not finite
        MeasurementError: If y_prime has zero probability density
    """
    if not math.isfinite(y_prime):
        raise ParameterError("y_prime", f"must be finite, got {y_prime}")

    log_r = float(log_branch_ratio(state, y_prime, params))
    if math.isnan(log_r):
        raise MeasurementError(f"Position {y_prime:.6g} has zero probability density")

    p_k1 = float(expit(log_r))
    p_k0 = float(expit(-log_r))

    phase0 = state.c0 / abs(state.c0) if abs(state.c0) > 0 else 1.0 + 0j
    phase1 = state.d1 * (1.0 if y_prime >= 0 else -1.0)
    posterior = FinalStateAmplitudes(
        c0=phase0 * math.sqrt(p_k0),
        c1=phase1 * math.sqrt(p_k1),
        k0=state.k0,
        k1=state.k1,
        e_total=state.e_total,
    )

    w0, w1 = state.weights
    density = (
        w0 * ho_wavefunction(0, y_prime, params) ** 2
        + w1 * ho_wavefunction(1, y_prime, params) ** 2
    )
    return MeasurementOutcome(
        observable=Observable.OSCILLATOR_POSITION,
        value=y_prime,
        posterior=posterior,
        density=float(density),
    )


def conditional_probability_curve(state: FinalStateAmplitudes,
                                  params: ModelParams,
                                  y_values: Optional[np.ndarray] = None) -> pd.DataFrame:
    """Columns y_prime, p_k0, p_k1: beam branch probabilities after finding the oscillator at y'."""
    y = default_y_values(params) if y_values is None else np.asarray(y_values, dtype=float)
    log_r = log_branch_ratio(state, y, params)
    return pd.DataFrame({
        "y_prime": y,
        "p_k0": expit(-log_r),
        "p_k1": expit(log_r),
    }, columns=CURVE_COLUMNS)


def crossover_position(state: FinalStateAmplitudes, params: ModelParams) -> float:
    """
    Position y* > 0 where P(k1|y*) = 1/2, y* = sigma_y |c0 / c1| / sqrt(2).

    Returns inf when the scattered branch is empty.
    """
    if abs(state.c1) == 0:
        return math.inf
    return params.sigma_y * abs(state.c0) / abs(state.c1) / math.sqrt(2.0)


@dataclass
class SampleTally:
    """Joint (beam branch, oscillator position) samples."""
    order: MeasurementOrder
    seed: int
    branches: np.ndarray
    y_values: np.ndarray

    def __len__(self) -> int:
        return len(self.branches)

    @property
    def counts(self) -> Dict[str, int]:
        n_k1 = int(np.count_nonzero(self.branches))
        return {"k0": len(self) - n_k1, "k1": n_k1}

    def frequency_k1(self) -> float:
        return self.counts["k1"] / len(self)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"k_branch": self.branches, "y_value": self.y_values}, columns=TALLY_COLUMNS)

    def summary(self) -> Dict[str, object]:
        counts = self.counts
        return {
            "order": self.order.value,
            "seed": self.seed,
            "n": len(self),
            "count_k0": counts["k0"],
            "count_k1": counts["k1"],
            "frequency_k1": self.frequency_k1(),
        }


class _InverseCdf:
    """Inverse-CDF sampler for a density tabulated on a grid."""

    def __init__(self, y: np.ndarray, density: np.ndarray):
        cdf = cumulative_trapezoid(density, y, initial=0.0)
        cdf /= cdf[-1]
        # np.interp needs strictly increasing abscissae; flat tails are dropped
        keep = np.concatenate(([True], np.diff(cdf) > 0))
        self.cdf = cdf[keep]
        self.y = y[keep]

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return np.interp(u, self.cdf, self.y)


def sample_joint_measurement(state: FinalStateAmplitudes,
                             seed: int,
                             order: str,
                             n: int,
                             params: ModelParams,
                             grid_points: int = SAMPLING_POINTS) -> SampleTally:
    """
    Draw n joint outcomes by the Born rule.

    beam_first draws the branch from (|c0|^2, |c1|^2) and then y from the
    branch density |psi_n(y)|^2; oscillator_first draws y from the marginal
    density and then the branch from P(k_n | y).

    Args:
        state: Final state
        seed: Seed for numpy's default generator
        order: "beam_first" or "oscillator_first"
        n: Number of samples
        params: Model parameters
        grid_points: Points of the tabulated inverse CDF

    Returns:
        SampleTally

    Raises:
        ParameterError: If n < 1 or the order is unknown
    """
    if n < 1:
        raise ParameterError("numerics.n_samples", f"must be at least 1, got {n}")
    try:
        order = MeasurementOrder(order)
    except ValueError:
        raise ParameterError("order", f"unknown measurement order {order!r}")

    rng = np.random.default_rng(seed)
    reach = SAMPLING_HALF_WIDTH * params.sigma_y
    y_grid = np.linspace(-reach, reach, grid_points)
    density0 = ho_wavefunction(0, y_grid, params) ** 2
    density1 = ho_wavefunction(1, y_grid, params) ** 2
    w0, w1 = state.weights

    if order == MeasurementOrder.BEAM_FIRST:
        branches = (rng.random(n) < w1).astype(np.int64)
        uniforms = rng.random(n)
        y_values = np.empty(n)
        for level, density in ((0, density0), (1, density1)):
            selected = branches == level
            if np.any(selected):
                y_values[selected] = _InverseCdf(y_grid, density)(uniforms[selected])
    else:
        y_values = _InverseCdf(y_grid, w0 * density0 + w1 * density1)(rng.random(n))
        p_k1 = expit(log_branch_ratio(state, y_values, params))
        branches = (rng.random(n) < p_k1).astype(np.int64)

    tally = SampleTally(order=order, seed=seed, branches=branches, y_values=y_values)
    logger.debug(f"Sampled {n} joint outcomes ({order.value}): {tally.counts}")
    return tally


def joint_histogram(tally: SampleTally, bin_edges: np.ndarray) -> np.ndarray:
    """Counts per (branch, y bin); shape (2, len(bin_edges) - 1)."""
    return np.vstack([
        np.histogram(tally.y_values[tally.branches == level], bins=bin_edges)[0]
        for level in (0, 1)
    ])


def order_independence_pvalue(first: SampleTally, second: SampleTally, bins: int = 20) -> float:
    """
    Chi-squared p-value that two tallies come from the same joint distribution.

    Cells empty in both tallies are dropped before the test.
    """
    reach = max(np.max(np.abs(first.y_values)), np.max(np.abs(second.y_values)))
    edges = np.linspace(-reach, reach, bins + 1)
    table = np.vstack([joint_histogram(first, edges).ravel(), joint_histogram(second, edges).ravel()])
    table = table[:, table.sum(axis=0) > 0]
    if table.shape[1] < 2:
        return 1.0
    _, p_value, _, _ = chi2_contingency(table)
    return float(p_value)
