"""
Observables of the oscillator wavefunction and the per-step history
collected while it evolves.
"""

from dataclasses import dataclass, field
from typing import List
import logging

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.utils.error_handling import GridError, ParameterError
from .grid import WaveFunction1D, ho_eigenstate

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["t", "P0", "P1", "y_expect", "p_expect", "norm"]

MOMENTUM_METHODS = ("spectral", "central")


def overlap(phi: WaveFunction1D, psi: WaveFunction1D) -> complex:
    """<phi|psi> by the trapezoid rule."""
    if phi.grid != psi.grid:
        raise GridError("Overlap requires wavefunctions on the same grid")
    return complex(trapezoid(np.conj(phi.amplitudes) * psi.amplitudes, dx=psi.grid.dy))


def overlap_probability(psi: WaveFunction1D, n: int, params: ModelParams) -> float:
    """
    Probability of finding the oscillator in level n, |<psi_n|psi>|^2.

    Args:
        psi: Wavefunction
        n: Level, 0 or 1
        params: Model parameters

    Returns:
        P_n
    """
    eigenstate = ho_eigenstate(n, params, psi.grid)
    return abs(overlap(eigenstate, psi)) ** 2


def expectation_y(psi: WaveFunction1D) -> float:
    """<y> = integral psi* y psi dy."""
    return float(trapezoid(psi.density() * psi.grid.y, dx=psi.grid.dy))


def expectation_p(psi: WaveFunction1D, hbar: float = 1.0, method: str = "spectral") -> float:
    """
    <p_y> with p_y = -i hbar d/dy.

    The spectral derivative commutes with the finite-difference kinetic
    operator used by the propagators, so Ehrenfest's relation for the
    momentum holds without a dy^2 bias. `method="central"` uses the
    second-order centred difference instead.

    Args:
        psi: Wavefunction
        hbar: Reduced Planck constant
        method: "spectral" or "central"

    Returns:
        <p_y>
    """
    amplitudes = psi.amplitudes
    dy = psi.grid.dy

    if method == "spectral":
        k = 2.0 * np.pi * np.fft.fftfreq(len(amplitudes), d=dy)
        derivative = np.fft.ifft(1j * k * np.fft.fft(amplitudes))
    elif method == "central":
        derivative = np.zeros_like(amplitudes)
        derivative[1:-1] = (amplitudes[2:] - amplitudes[:-2]) / (2.0 * dy)
    else:
        raise ParameterError("numerics.momentum_method", f"unknown derivative method {method!r}")

    integrand = np.conj(amplitudes) * (-1j * hbar) * derivative
    return float(trapezoid(integrand, dx=dy).real)


@dataclass(frozen=True)
class TdseSample:
    """Observables recorded at one instant of an evolution."""
    t: float
    p0: float
    p1: float
    y_expect: float
    p_expect: float
    norm: float


@dataclass
class TdseHistory:
    """Observer that accumulates TdseSample records."""
    samples: List[TdseSample] = field(default_factory=list)

    def __call__(self, sample: TdseSample) -> None:
        self.samples.append(sample)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def t(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def y_expect(self) -> np.ndarray:
        return np.array([s.y_expect for s in self.samples])

    @property
    def p_expect(self) -> np.ndarray:
        return np.array([s.p_expect for s in self.samples])

    @property
    def p0(self) -> np.ndarray:
        return np.array([s.p0 for s in self.samples])

    @property
    def p1(self) -> np.ndarray:
        return np.array([s.p1 for s in self.samples])

    @property
    def norm(self) -> np.ndarray:
        return np.array([s.norm for s in self.samples])

    def to_frame(self) -> pd.DataFrame:
        """DataFrame with columns t, P0, P1, y_expect, p_expect, norm."""
        return pd.DataFrame(
            [(s.t, s.p0, s.p1, s.y_expect, s.p_expect, s.norm) for s in self.samples],
            columns=HISTORY_COLUMNS,
        )


def ehrenfest_residual(history: TdseHistory, params: ModelParams, f: WindowFunction) -> float:
    """
    Largest violation of d<p_y>/dt = -mu omega0^2 <y> + alpha f(v t).

    The time derivative is a centred difference on the interior samples.

    Args:
        history: Uniformly sampled history with at least 3 samples
        params: Model parameters
        f: Window function

    Returns:
        max_t |residual| (force units)

    Raises:
        ParameterError: If the history is too short or not uniform
    """
    if len(history) < 3:
        raise ParameterError("history", f"need at least 3 samples, got {len(history)}")

    t = history.t
    steps = np.diff(t)
    if not np.allclose(steps, steps[0], rtol=1e-6, atol=0.0):
        raise ParameterError("history", "samples must be uniformly spaced in time")

    p = history.p_expect
    y = history.y_expect
    dp_dt = (p[2:] - p[:-2]) / (t[2:] - t[:-2])
    force = -params.mu * params.omega0 ** 2 * y[1:-1] + params.alpha * f.evaluate(params.v * t[1:-1])
    return float(np.max(np.abs(dp_dt - force)))


def snapshot_frame(psi: WaveFunction1D, include_components: bool = False) -> pd.DataFrame:
    """Columns y, psi_abs2 (and re, im when requested)."""
    data = {"y": psi.grid.y, "psi_abs2": psi.density()}
    if include_components:
        data["re"] = psi.amplitudes.real
        data["im"] = psi.amplitudes.imag
    return pd.DataFrame(data)
