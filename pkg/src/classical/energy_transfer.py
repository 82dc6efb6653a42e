"""
Closed-form energy transfer from beam to oscillator, and the numerical
work integral used to check it.

Under the straight-line approximation x = v t the oscillator is a driven
harmonic oscillator, and the work it receives over a full passage is

    W_HO = (pi alpha^2 / mu) |f~(omega0)|^2 = mu omega0^2 y_m^2 / 2.
"""

import math
import logging

import numpy as np
from scipy.integrate import trapezoid

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.utils.error_handling import TruncationError
from .integrator import ClassicalTrajectory, DECOUPLED_FRACTION

logger = logging.getLogger(__name__)


def classical_amplitude_analytic(params: ModelParams, f: WindowFunction) -> float:
    """
    Post-passage oscillator amplitude y_m = sqrt(2 pi) alpha |f~(omega0)| / (mu omega0).

    Args:
        params: Model parameters
        f: Window function

    Returns:
        Amplitude y_m (length)
    """
    f_tilde = abs(f.temporal_ft(params.v, params.omega0))
    return math.sqrt(2.0 * math.pi) * abs(params.alpha) * f_tilde / (params.mu * params.omega0)


def work_on_oscillator_analytic(params: ModelParams, f: WindowFunction) -> float:
    """
    Energy gained by the oscillator, W_HO = (pi alpha^2 / mu) |f~(omega0)|^2.

    Args:
        params: Model parameters
        f: Window function

    Returns:
        W_HO (energy, non-negative)
    """
    f_tilde = abs(f.temporal_ft(params.v, params.omega0))
    return math.pi * params.alpha ** 2 * f_tilde ** 2 / params.mu


def work_on_beam_analytic(params: ModelParams, f: WindowFunction) -> float:
    """Energy gained by the beam, W_beam = -W_HO."""
    return -work_on_oscillator_analytic(params, f)


def gaussian_amplitude_closed_form(params: ModelParams, b: float) -> float:
    """y_m = sqrt(pi) alpha exp(-b^2 w0^2 / 4 v^2) / (mu w0 v b) for the gaussian window."""
    v = abs(params.v)
    return (
        math.sqrt(math.pi) * abs(params.alpha) / (params.mu * params.omega0)
        * math.exp(-b ** 2 * params.omega0 ** 2 / (4.0 * v ** 2)) / (v * b)
    )


def gaussian_work_closed_form(params: ModelParams, b: float) -> float:
    """W_HO = pi alpha^2 exp(-b^2 w0^2 / 2 v^2) / (2 mu v^2 b^2) for the gaussian window."""
    v = abs(params.v)
    return (
        math.pi * params.alpha ** 2 / (2.0 * params.mu * v ** 2 * b ** 2)
        * math.exp(-b ** 2 * params.omega0 ** 2 / (2.0 * v ** 2))
    )


def work_on_beam_numeric(traj: ClassicalTrajectory,
                         params: ModelParams,
                         f: WindowFunction) -> float:
    """
    Work done on the beam, integral of alpha * y(t) * df/dt over the trajectory.

    Here df/dt = f'(x(t)) * p_x(t) / m is taken along the integrated path, so the
    result is independent of the residue-theorem evaluation.

    Args:
        traj: Trajectory spanning the whole interaction
        params: Model parameters
        f: Window function

    Returns:
        W_beam (energy, negative when the oscillator starts at rest)

    Raises:
        TruncationError: If the window has not decayed at either end
    """
    threshold = DECOUPLED_FRACTION * f.peak()
    for label, x_end in (("start", traj.x[0]), ("end", traj.x[-1])):
        if abs(f.evaluate(x_end)) >= threshold:
            raise TruncationError(
                f"Trajectory {label} at x={x_end:.6g} is inside the interaction window"
            )

    df_dt = f.derivative(traj.x) * traj.p_x / params.m
    work = float(trapezoid(params.alpha * traj.y * df_dt, traj.t))
    logger.debug(f"Numeric beam work over {len(traj)} samples: {work:.6e}")
    return work
