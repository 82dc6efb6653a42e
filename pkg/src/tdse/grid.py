"""
Spatial grid and wavefunctions for the oscillator coordinate y.
"""

import math
from dataclasses import dataclass, field
from typing import Union
import logging

import numpy as np
from scipy.integrate import trapezoid

from src.model.params import ModelParams
from src.utils.error_handling import GridError, ParameterError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

DEFAULT_HALF_WIDTH = 12.0
DEFAULT_POINTS = 513

# Eigenstates need this many sigma_y on either side of the origin
MIN_HALF_WIDTH = 8.0


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [y_min, y_max] with n_points nodes."""
    y_min: float
    y_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3:
            raise ParameterError("numerics.grid_points", f"need at least 3 points, got {self.n_points}")
        if not (self.y_min < 0 < self.y_max):
            raise ParameterError("grid", f"need y_min < 0 < y_max, got [{self.y_min}, {self.y_max}]")

    @classmethod
    def symmetric(cls, half_width: float, n_points: int = DEFAULT_POINTS) -> "Grid1D":
        return cls(-half_width, half_width, n_points)

    @classmethod
    def default_for(cls,
                    params: ModelParams,
                    half_width_sigmas: float = DEFAULT_HALF_WIDTH,
                    n_points: int = DEFAULT_POINTS) -> "Grid1D":
        """Symmetric grid of +/- half_width_sigmas * sigma_y."""
        return cls.symmetric(half_width_sigmas * params.sigma_y, n_points)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.n_points - 1)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.n_points)

    def refined(self) -> "Grid1D":
        """Same interval with twice as many intervals."""
        return Grid1D(self.y_min, self.y_max, 2 * self.n_points - 1)


@dataclass(frozen=True, eq=False)
class WaveFunction1D:
    """Complex amplitudes on a grid at time t."""
    grid: Grid1D
    amplitudes: np.ndarray = field(repr=False)
    t: float = 0.0

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.grid.n_points,):
            raise GridError(
                f"Amplitude array of shape {amplitudes.shape} does not match grid of {self.grid.n_points} points"
            )
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    def density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        """Trapezoid-rule integral of |psi|^2."""
        return float(trapezoid(self.density(), dx=self.grid.dy))

    def normalized(self) -> "WaveFunction1D":
        return WaveFunction1D(self.grid, self.amplitudes / math.sqrt(self.norm()), self.t)


def ho_wavefunction(n: int, y: ArrayLike, params: ModelParams) -> ArrayLike:
    """
    Closed-form oscillator eigenfunctions psi_0 and psi_1.

        psi_0(y) = (pi sigma^2)^(-1/4) exp(-y^2 / 2 sigma^2)
        psi_1(y) = sqrt(2) (y / sigma) psi_0(y)

    Args:
        n: Level, 0 or 1
        y: Position(s)
        params: Model parameters

    Returns:
        psi_n(y)
    """
    sigma = params.sigma_y
    psi0 = (math.pi * sigma ** 2) ** -0.25 * np.exp(-np.square(y) / (2.0 * sigma ** 2))
    if n == 0:
        return psi0
    if n == 1:
        return math.sqrt(2.0) * np.asarray(y) / sigma * psi0
    raise ParameterError("n", f"only levels 0 and 1 are available, got {n}")


def ho_log_density(n: int, y: ArrayLike, params: ModelParams) -> ArrayLike:
    """log |psi_n(y)|^2, safe far in the tails (-inf at the node of psi_1)."""
    sigma = params.sigma_y
    y = np.asarray(y, dtype=float)
    log0 = -0.5 * math.log(math.pi * sigma ** 2) - np.square(y) / sigma ** 2
    if n == 0:
        return log0
    if n == 1:
        with np.errstate(divide="ignore"):
            return log0 + math.log(2.0) + 2.0 * np.log(np.abs(y) / sigma)
    raise ParameterError("n", f"only levels 0 and 1 are available, got {n}")


def ho_eigenstate(n: int, params: ModelParams, grid: Grid1D, t: float = 0.0) -> WaveFunction1D:
    """
    Sample psi_n on a grid and renormalize to unit discrete norm.

    Args:
        n: Level, 0 or 1
        params: Model parameters
        grid: Spatial grid, at least MIN_HALF_WIDTH sigma_y on each side
        t: Time stamp

    Returns:
        WaveFunction1D

    Raises:
        GridError: If the grid would truncate the eigenstate tails
    """
    reach = min(-grid.y_min, grid.y_max) / params.sigma_y
    if reach < MIN_HALF_WIDTH:
        raise GridError(
            f"Grid reaches only {reach:.2f} sigma_y; need {MIN_HALF_WIDTH:g} to hold the eigenstate tails"
        )
    psi = WaveFunction1D(grid, ho_wavefunction(n, grid.y, params), t)
    return psi.normalized()


def displaced_ground_state(params: ModelParams, grid: Grid1D, shift: float, t: float = 0.0) -> WaveFunction1D:
    """Ground state translated by `shift` (a coherent state), normalized on the grid."""
    psi = WaveFunction1D(grid, ho_wavefunction(0, grid.y - shift, params), t)
    return psi.normalized()


def superpose(a: complex, psi_a: WaveFunction1D, b: complex, psi_b: WaveFunction1D) -> WaveFunction1D:
    """a * psi_a + b * psi_b on a shared grid (no renormalization)."""
    if psi_a.grid != psi_b.grid:
        raise GridError("Cannot superpose wavefunctions on different grids")
    return WaveFunction1D(psi_a.grid, a * psi_a.amplitudes + b * psi_b.amplitudes, psi_a.t)
