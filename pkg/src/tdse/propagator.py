"""
Time evolution of the oscillator wavefunction under the driven Hamiltonian

    H(t) = -(hbar^2 / 2 mu) d^2/dy^2 + mu omega0^2 y^2 / 2 - alpha y f(v t)

with a three-point Laplacian and hard walls at the grid edges.

Two steppers are available:
    implicit_midpoint  (1 + i dt H/2hbar) psi' = (1 - i dt H/2hbar) psi, H at t + dt/2;
                       unconditionally stable and exactly unitary
    leapfrog           explicit staggered update of Re psi and Im psi (FDTD);
                       stable for dt * E_max <= 2 hbar
"""

import math
from enum import Enum
from typing import Callable, Optional
import logging

import numpy as np
from scipy.linalg import solve_banded

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.utils.error_handling import ParameterError, StabilityError
from .grid import WaveFunction1D, ho_eigenstate
from .observables import (
    MOMENTUM_METHODS,
    TdseSample,
    expectation_p,
    expectation_y,
    overlap,
)

logger = logging.getLogger(__name__)

# Norm drift that aborts an evolution
MAX_NORM_DRIFT = 1e-4

# Input wavefunctions must be normalized to this tolerance
NORM_TOLERANCE = 1e-6

Observer = Callable[[TdseSample], None]


class Stepper(str, Enum):
    IMPLICIT_MIDPOINT = "implicit_midpoint"
    LEAPFROG = "leapfrog"


class _DrivenHamiltonian:
    """Tridiagonal H(t) on the interior grid points."""

    def __init__(self, psi: WaveFunction1D, params: ModelParams, f: WindowFunction):
        y = psi.grid.y[1:-1]
        self.y = y
        self.params = params
        self.f = f
        self.kinetic_off = -params.hbar ** 2 / (2.0 * params.mu * psi.grid.dy ** 2)
        self.static_diag = -2.0 * self.kinetic_off + 0.5 * params.mu * params.omega0 ** 2 * y ** 2

    def diagonal(self, t: float) -> np.ndarray:
        drive = self.params.alpha * float(self.f.evaluate(self.params.v * t))
        return self.static_diag - drive * self.y

    def apply(self, vector: np.ndarray, diagonal: np.ndarray) -> np.ndarray:
        result = diagonal * vector
        result[:-1] += self.kinetic_off * vector[1:]
        result[1:] += self.kinetic_off * vector[:-1]
        return result

    def max_energy(self) -> float:
        """Upper bound on the spectrum of H (Gershgorin)."""
        drive_peak = abs(self.params.alpha) * self.f.peak() * np.max(np.abs(self.y))
        return float(np.max(self.static_diag) + drive_peak + 2.0 * abs(self.kinetic_off))


def evolve_tdse(psi: WaveFunction1D,
                params: ModelParams,
                f: WindowFunction,
                t_end: float,
                dt: float,
                observer: Optional[Observer] = None,
                stepper: str = Stepper.IMPLICIT_MIDPOINT,
                observer_stride: int = 1,
                momentum_method: str = "spectral") -> WaveFunction1D:
    """
    Evolve psi from psi.t to t_end.

    The step is adjusted slightly so that an integer number of steps lands on t_end.

    Args:
        psi: Normalized initial wavefunction
        params: Model parameters
        f: Window function
        t_end: Final time
        dt: Requested time step
        observer: Called with a TdseSample at the start and every observer_stride steps
        stepper: "implicit_midpoint" or "leapfrog"
        observer_stride: Steps between observer calls
        momentum_method: Derivative used for the recorded <p_y>, "spectral" or "central"

    Returns:
        Wavefunction at t_end

    Raises:
        ParameterError: If dt, t_end, stride or the input norm are invalid
        StabilityError: If the norm drifts by more than MAX_NORM_DRIFT
    """
    if not dt > 0:
        raise ParameterError("numerics.dt", f"must be positive, got {dt}")
    if not t_end > psi.t:
        raise ParameterError("t_end", f"must exceed the start time {psi.t}")
    if observer_stride < 1:
        raise ParameterError("numerics.stride", "must be at least 1")
    if momentum_method not in MOMENTUM_METHODS:
        raise ParameterError(
            "numerics.momentum_method",
            f"must be one of {', '.join(MOMENTUM_METHODS)}, got {momentum_method!r}",
        )

    initial_norm = psi.norm()
    if abs(initial_norm - 1.0) > NORM_TOLERANCE:
        raise ParameterError("psi", f"wavefunction must be normalized, norm={initial_norm:.8f}")

    try:
        stepper = Stepper(stepper)
    except ValueError:
        raise ParameterError("numerics.stepper", f"unknown stepper {stepper!r}")

    n_steps = max(1, int(round((t_end - psi.t) / dt)))
    dt = (t_end - psi.t) / n_steps
    logger.debug(f"Evolving {n_steps} {stepper.value} steps, dt={dt:g}")

    hamiltonian = _DrivenHamiltonian(psi, params, f)
    sampler = _Sampler(psi, params, observer, observer_stride, momentum_method)

    if stepper == Stepper.IMPLICIT_MIDPOINT:
        interior = _run_implicit_midpoint(psi, hamiltonian, dt, n_steps, sampler)
    else:
        interior = _run_leapfrog(psi, hamiltonian, dt, n_steps, sampler)

    amplitudes = np.zeros(psi.grid.n_points, dtype=complex)
    amplitudes[1:-1] = interior
    return WaveFunction1D(psi.grid, amplitudes, t_end)


def _run_implicit_midpoint(psi: WaveFunction1D,
                           hamiltonian: _DrivenHamiltonian,
                           dt: float,
                           n_steps: int,
                           sampler: "_Sampler") -> np.ndarray:
    hbar = hamiltonian.params.hbar
    factor = 0.5j * dt / hbar
    vector = np.array(psi.amplitudes[1:-1], dtype=complex)
    n = len(vector)

    banded = np.empty((3, n), dtype=complex)
    banded[0, 0] = 0.0
    banded[0, 1:] = factor * hamiltonian.kinetic_off
    banded[2, :-1] = factor * hamiltonian.kinetic_off
    banded[2, -1] = 0.0

    sampler.record(0, psi.t, vector)
    for step in range(1, n_steps + 1):
        t_mid = psi.t + (step - 0.5) * dt
        diagonal = hamiltonian.diagonal(t_mid)
        rhs = vector - factor * hamiltonian.apply(vector, diagonal)
        banded[1, :] = 1.0 + factor * diagonal
        vector = solve_banded((1, 1), banded, rhs, check_finite=False)
        sampler.check_norm(step, vector)
        sampler.record(step, psi.t + step * dt, vector)

    return vector


def _run_leapfrog(psi: WaveFunction1D,
                  hamiltonian: _DrivenHamiltonian,
                  dt: float,
                  n_steps: int,
                  sampler: "_Sampler") -> np.ndarray:
    hbar = hamiltonian.params.hbar
    e_max = hamiltonian.max_energy()
    if dt * e_max > 2.0 * hbar:
        raise StabilityError(
            0, float("nan"),
            message=(
                f"Leapfrog step dt={dt:g} exceeds the stability limit "
                f"{2.0 * hbar / e_max:.4g}"
            ),
        )

    t0 = psi.t
    real = np.array(psi.amplitudes[1:-1].real)
    imag = np.array(psi.amplitudes[1:-1].imag)

    # Im psi lives on half steps
    imag_half = imag - 0.5 * dt / hbar * hamiltonian.apply(real, hamiltonian.diagonal(t0))

    sampler.record(0, t0, real + 1j * imag)
    for step in range(1, n_steps + 1):
        real = real + dt / hbar * hamiltonian.apply(imag_half, hamiltonian.diagonal(t0 + (step - 0.5) * dt))
        h_real = hamiltonian.apply(real, hamiltonian.diagonal(t0 + step * dt))
        imag_next = imag_half - dt / hbar * h_real

        # Conserved discrete probability of the staggered scheme
        staggered_norm = (np.dot(real, real) + np.dot(imag_next, imag_half)) * sampler.dy
        sampler.check_drift(step, staggered_norm)

        if sampler.wants(step):
            imag_now = 0.5 * (imag_half + imag_next)
            sampler.record(step, t0 + step * dt, real + 1j * imag_now)
        imag_half = imag_next

    imag_final = imag_half + 0.5 * dt / hbar * h_real
    return real + 1j * imag_final


class _Sampler:
    """Norm checks and observer bookkeeping shared by the steppers."""

    def __init__(self,
                 psi: WaveFunction1D,
                 params: ModelParams,
                 observer: Optional[Observer],
                 stride: int,
                 momentum_method: str = "spectral"):
        self.grid = psi.grid
        self.dy = psi.grid.dy
        self.hbar = params.hbar
        self.observer = observer
        self.stride = stride
        self.momentum_method = momentum_method
        self.reference_norm = psi.norm()
        if observer is not None:
            self.ground = ho_eigenstate(0, params, psi.grid)
            self.excited = ho_eigenstate(1, params, psi.grid)

    def wants(self, step: int) -> bool:
        return self.observer is not None and step % self.stride == 0

    def check_norm(self, step: int, interior: np.ndarray) -> None:
        self.check_drift(step, float(np.vdot(interior, interior).real) * self.dy)

    def check_drift(self, step: int, norm: float) -> None:
        drift = abs(norm - self.reference_norm)
        if not math.isfinite(norm) or drift > MAX_NORM_DRIFT:
            raise StabilityError(step, drift)

    def record(self, step: int, t: float, interior: np.ndarray) -> None:
        if not self.wants(step):
            return
        amplitudes = np.zeros(self.grid.n_points, dtype=complex)
        amplitudes[1:-1] = interior
        psi = WaveFunction1D(self.grid, amplitudes, t)
        self.observer(TdseSample(
            t=t,
            p0=abs(overlap(self.ground, psi)) ** 2,
            p1=abs(overlap(self.excited, psi)) ** 2,
            y_expect=expectation_y(psi),
            p_expect=expectation_p(psi, self.hbar, self.momentum_method),
            norm=psi.norm(),
        ))
