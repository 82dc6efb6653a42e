"""
Classical equations of motion for the beam/oscillator pair.

    dx/dt   = p_x / m           dp_x/dt = alpha * y * f'(x)
    dy/dt   = p_y / mu          dp_y/dt = -mu * omega0^2 * y + alpha * f(x)

integrated with the Euler-Richardson (midpoint) method. The full coupled
system is evolved; the beam is not held at constant velocity unless
`prescribed_path=True` is requested.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple
import logging

import numpy as np
import pandas as pd

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.utils.error_handling import (
    IntegrationDivergedError,
    ParameterError,
    TruncationError,
)

logger = logging.getLogger(__name__)

# A start position is "decoupled" once f has fallen below this fraction of its peak
DECOUPLED_FRACTION = 1e-12

TRAJECTORY_COLUMNS = ["t", "x", "p_x", "y", "p_y", "H"]


@dataclass(frozen=True)
class ClassicalState:
    """Phase-space point of the combined system at time t."""
    t: float
    x: float
    p_x: float
    y: float
    p_y: float

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in (self.t, self.x, self.p_x, self.y, self.p_y))


@dataclass(frozen=True, eq=False)
class ClassicalTrajectory:
    """Uniformly sampled trajectory with its total-energy series."""
    dt: float
    t: np.ndarray
    x: np.ndarray
    p_x: np.ndarray
    y: np.ndarray
    p_y: np.ndarray
    energy: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def energy_drift(self, mass: float) -> float:
        """
        Largest deviation of H from its initial value, relative to the initial
        beam kinetic energy.

        Args:
            mass: Beam mass m

        Returns:
            max_t |H(t) - H(t0)| / (p_x(t0)^2 / 2m)
        """
        kinetic = self.p_x[0] ** 2 / (2.0 * mass)
        return float(np.max(np.abs(self.energy - self.energy[0])) / abs(kinetic))

    def to_frame(self, stride: int = 1) -> pd.DataFrame:
        """
        Tabulate every `stride`-th sample (the final sample is always kept).

        Args:
            stride: Sample stride

        Returns:
            DataFrame with columns t, x, p_x, y, p_y, H
        """
        if stride < 1:
            raise ParameterError("numerics.stride", "must be at least 1")
        index = np.arange(0, len(self), stride)
        if index[-1] != len(self) - 1:
            index = np.append(index, len(self) - 1)
        return pd.DataFrame({
            "t": self.t[index],
            "x": self.x[index],
            "p_x": self.p_x[index],
            "y": self.y[index],
            "p_y": self.p_y[index],
            "H": self.energy[index],
        }, columns=TRAJECTORY_COLUMNS)


def total_energy(state: ClassicalState, params: ModelParams, f: WindowFunction) -> float:
    """Classical Hamiltonian H = p_x^2/2m + p_y^2/2mu + mu w0^2 y^2/2 - alpha y f(x)."""
    return _energy(state.x, state.p_x, state.y, state.p_y, params, f)


def _energy(x, p_x, y, p_y, params: ModelParams, f: WindowFunction):
    return (
        p_x ** 2 / (2.0 * params.m)
        + p_y ** 2 / (2.0 * params.mu)
        + 0.5 * params.mu * params.omega0 ** 2 * y ** 2
        - params.alpha * y * f.evaluate(x)
    )


def default_time_window(params: ModelParams,
                        f: WindowFunction,
                        t_span: float = 20.0,
                        fit_periods: int = 10) -> Tuple[float, float]:
    """
    Start and stop times for a passage centred on t = 0.

    The run starts at -t_span * b/|v| and ends at +t_span * b/|v|, extended
    where needed so that at least `fit_periods` oscillator periods follow the
    moment the window has decayed below DECOUPLED_FRACTION of its peak.

    Args:
        params: Model parameters
        f: Window function
        t_span: Half-span in units of b/|v|
        fit_periods: Periods required after decoupling

    Returns:
        (t0, t_end)
    """
    speed = abs(params.v)
    half_span = t_span * f.length_scale() / speed
    lo, hi = f.effective_support(DECOUPLED_FRACTION)
    t_decoupled = max(abs(lo), abs(hi)) / speed
    period = 2.0 * math.pi / params.omega0
    t_end = max(half_span, t_decoupled + fit_periods * period)
    return -half_span, t_end


def default_initial_state(params: ModelParams, f: WindowFunction, t0: float) -> ClassicalState:
    """Beam on the straight line x = v t with momentum m v, oscillator at rest."""
    return ClassicalState(t=t0, x=params.v * t0, p_x=params.m * params.v, y=0.0, p_y=0.0)


def integrate_classical(params: ModelParams,
                        f: WindowFunction,
                        initial: ClassicalState,
                        dt: float,
                        t_end: float,
                        prescribed_path: bool = False) -> ClassicalTrajectory:
    """
    Integrate the coupled equations of motion with the Euler-Richardson method.

    Args:
        params: Model parameters
        f: Window function
        initial: Starting state, placed where the window has decayed
        dt: Time step
        t_end: Final time
        prescribed_path: Hold the beam on x = x0 + v (t - t0) instead of evolving it

    Returns:
        ClassicalTrajectory sampled every dt

    Raises:
        ParameterError: If dt, t_end or the start position are invalid
        IntegrationDivergedError: If a non-finite state appears
    """
    if not dt > 0:
        raise ParameterError("numerics.dt", f"must be positive, got {dt}")
    if not initial.t < t_end:
        raise ParameterError("t_end", f"must exceed the start time {initial.t}")
    if not initial.is_finite():
        raise ParameterError("initial", "initial state must be finite")
    if abs(f.evaluate(initial.x)) >= DECOUPLED_FRACTION * f.peak():
        raise ParameterError(
            "initial.x",
            f"start position {initial.x:.6g} is inside the interaction window",
        )

    n_steps = int(round((t_end - initial.t) / dt))
    logger.debug(
        f"Integrating {n_steps} Euler-Richardson steps, dt={dt:g}, "
        f"t=[{initial.t:.4g}, {t_end:.4g}], prescribed_path={prescribed_path}"
    )

    window, slope = _window_callables(f)
    m, mu, alpha = params.m, params.mu, params.alpha
    w2 = params.omega0 ** 2
    half = 0.5 * dt
    v_path = initial.p_x / m

    x, p_x, y, p_y = initial.x, initial.p_x, initial.y, initial.p_y
    xs: List[float] = [x]
    pxs: List[float] = [p_x]
    ys: List[float] = [y]
    pys: List[float] = [p_y]

    for step in range(1, n_steps + 1):
        f_x = window(x)
        a_y = -w2 * y + alpha * f_x / mu

        y_mid = y + half * p_y / mu
        p_y_mid = p_y + half * mu * a_y

        if prescribed_path:
            x_mid = x + half * v_path
            x = x + dt * v_path
        else:
            F_x = alpha * y * slope(x)
            x_mid = x + half * p_x / m
            p_x_mid = p_x + half * F_x
            x = x + dt * p_x_mid / m
            p_x = p_x + dt * alpha * y_mid * slope(x_mid)

        y = y + dt * p_y_mid / mu
        p_y = p_y + dt * (-mu * w2 * y_mid + alpha * window(x_mid))

        if not (math.isfinite(x) and math.isfinite(p_x)
                and math.isfinite(y) and math.isfinite(p_y)):
            raise IntegrationDivergedError(step, initial.t + step * dt)

        xs.append(x)
        pxs.append(p_x)
        ys.append(y)
        pys.append(p_y)

    t = initial.t + dt * np.arange(n_steps + 1)
    x_arr = np.asarray(xs)
    px_arr = np.asarray(pxs)
    y_arr = np.asarray(ys)
    py_arr = np.asarray(pys)

    return ClassicalTrajectory(
        dt=dt,
        t=t,
        x=x_arr,
        p_x=px_arr,
        y=y_arr,
        p_y=py_arr,
        energy=_energy(x_arr, px_arr, y_arr, py_arr, params, f),
    )


def _window_callables(f: WindowFunction) -> Tuple[Callable[[float], float], Callable[[float], float]]:
    """Scalar f and df/dx; plain math for the gaussian to keep the step loop fast."""
    if f.is_gaussian:
        inv_b2 = 1.0 / f.b ** 2

        def window(x: float) -> float:
            return inv_b2 * math.exp(-x * x * inv_b2)

        def slope(x: float) -> float:
            return -2.0 * x * inv_b2 * inv_b2 * math.exp(-x * x * inv_b2)

        return window, slope

    return (lambda x: float(f.evaluate(x))), (lambda x: float(f.derivative(x)))


def oscillation_amplitude(times: np.ndarray,
                          values: np.ndarray,
                          omega: float,
                          periods: Optional[float] = None) -> float:
    """
    Least-squares amplitude of A cos(omega t + phi) fitted to a series.

    Args:
        times: Sample times
        values: Samples
        omega: Known angular frequency
        periods: Use only the final `periods` periods (None = all samples)

    Returns:
        Fitted amplitude A >= 0
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)

    if periods is not None:
        mask = times >= times[-1] - periods * 2.0 * math.pi / omega
        times, values = times[mask], values[mask]

    if len(times) < 3:
        raise TruncationError("Need at least 3 samples to fit an oscillation")

    design = np.column_stack([np.cos(omega * times), np.sin(omega * times)])
    (a, b), *_ = np.linalg.lstsq(design, values, rcond=None)
    return float(math.hypot(a, b))


def fit_amplitude(traj: ClassicalTrajectory, params: ModelParams, periods: float = 10) -> float:
    """
    Post-passage oscillator amplitude from the tail of a trajectory.

    Args:
        traj: Classical trajectory
        params: Model parameters (for omega0)
        periods: Number of final periods to fit

    Returns:
        Fitted amplitude y_m
    """
    return oscillation_amplitude(traj.t, traj.y, params.omega0, periods)
