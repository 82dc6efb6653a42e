"""
Window functions f(x) through which the beam and oscillator interact.

Two kinds are supported: a gaussian f(x) = b^-2 exp(-x^2/b^2) with closed-form
transforms, and a tabulated profile sampled on a grid (linear interpolation,
trapezoid quadrature for the transforms).

Fourier conventions:
    temporal  f~(w) = (2 pi)^-1/2 * integral dt exp(+i w t) f(v t)
    spatial   f-(k) = (2 pi)^-1/2 * integral dx exp(-i k x) f(x)
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple, Union
import logging

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid

from src.utils.error_handling import ParameterError, TruncationError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Integration bounds are set where f drops below this fraction of its peak
SUPPORT_THRESHOLD = 1e-14

# Tabulated windows must decay below this fraction of their peak at the grid edges
EDGE_DECAY = 1e-12


class WindowKind(str, Enum):
    GAUSSIAN = "gaussian"
    TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class WindowFunction:
    """
    Spatial coupling profile f(x), units of length^-2.

    Use `WindowFunction.gaussian(b)` or `WindowFunction.tabulated(x, f)`
    rather than the raw constructor.
    """

    kind: WindowKind
    b: Optional[float] = None
    x_samples: Optional[np.ndarray] = field(default=None, repr=False)
    f_samples: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def gaussian(cls, b: float) -> "WindowFunction":
        """
        Create the gaussian window b^-2 exp(-x^2/b^2).

        Args:
            b: Width (impact-parameter scale), must be positive

        Returns:
            WindowFunction instance
        """
        if not math.isfinite(b) or b <= 0:
            raise ParameterError("window.b", f"must be positive, got {b}")
        return cls(kind=WindowKind.GAUSSIAN, b=float(b))

    @classmethod
    def tabulated(cls, x: np.ndarray, f: np.ndarray) -> "WindowFunction":
        """
        Create a window from samples on a strictly increasing grid.

        Args:
            x: Sample positions
            f: Window values at those positions

        Returns:
            WindowFunction instance

        Raises:
            ParameterError: If the samples are malformed
            TruncationError: If the samples do not decay at the grid edges
        """
        x = np.asarray(x, dtype=float)
        f = np.asarray(f, dtype=float)

        if x.ndim != 1 or x.shape != f.shape:
            raise ParameterError("window.path", "x and f must be 1D arrays of equal length")
        if len(x) < 3:
            raise ParameterError("window.path", "need at least 3 samples")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(f)):
            raise ParameterError("window.path", "samples must be finite")
        if np.any(np.diff(x) <= 0):
            raise ParameterError("window.path", "x must be strictly increasing")

        peak = np.max(np.abs(f))
        if peak == 0:
            raise ParameterError("window.path", "window is identically zero")
        if abs(f[0]) > EDGE_DECAY * peak or abs(f[-1]) > EDGE_DECAY * peak:
            raise TruncationError(
                f"Tabulated window does not decay below {EDGE_DECAY:g} of its peak at the grid edges"
            )

        x.setflags(write=False)
        f.setflags(write=False)
        return cls(kind=WindowKind.TABULATED, x_samples=x, f_samples=f)

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "WindowFunction":
        """
        Load a tabulated window from a CSV file with columns x, f.

        Args:
            path: CSV file path

        Returns:
            WindowFunction instance
        """
        path = Path(path)
        if not path.exists():
            raise ParameterError("window.path", f"file not found: {path}")

        try:
            frame = pd.read_csv(path)
        except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
            raise ParameterError("window.path", f"cannot parse {path}: {e}")

        missing = {"x", "f"} - set(frame.columns)
        if missing:
            raise ParameterError("window.path", f"missing columns {sorted(missing)} in {path}")

        logger.info(f"Loaded tabulated window with {len(frame)} samples from {path}")
        return cls.tabulated(frame["x"].to_numpy(), frame["f"].to_numpy())

    @property
    def is_gaussian(self) -> bool:
        return self.kind == WindowKind.GAUSSIAN

    def peak(self) -> float:
        """Maximum of |f|."""
        if self.is_gaussian:
            return self.b ** -2
        return float(np.max(np.abs(self.f_samples)))

    def effective_support(self, threshold: float = SUPPORT_THRESHOLD) -> Tuple[float, float]:
        """
        Interval outside which |f| is below `threshold` times its peak.

        Args:
            threshold: Fraction of the peak

        Returns:
            (x_low, x_high)
        """
        if self.is_gaussian:
            half_width = self.b * math.sqrt(-math.log(threshold))
            return -half_width, half_width

        above = np.nonzero(np.abs(self.f_samples) > threshold * self.peak())[0]
        lo = max(above[0] - 1, 0)
        hi = min(above[-1] + 1, len(self.x_samples) - 1)
        return float(self.x_samples[lo]), float(self.x_samples[hi])

    def length_scale(self) -> float:
        """
        Characteristic width of the window.

        For the gaussian this is b. For a tabulated window it is the half-width
        of the effective support scaled so that a sampled gaussian gives back b.
        """
        if self.is_gaussian:
            return self.b
        lo, hi = self.effective_support()
        return max(abs(lo), abs(hi)) / math.sqrt(-math.log(SUPPORT_THRESHOLD))

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        """
        Evaluate f(x).

        Args:
            x: Position(s)

        Returns:
            f(x), zero outside a tabulated grid
        """
        if self.is_gaussian:
            return np.exp(-np.square(x) / self.b ** 2) / self.b ** 2
        return np.interp(x, self.x_samples, self.f_samples, left=0.0, right=0.0)

    def derivative(self, x: ArrayLike) -> ArrayLike:
        """
        Evaluate df/dx.

        Args:
            x: Position(s)

        Returns:
            df/dx at x
        """
        if self.is_gaussian:
            return -2.0 * x / self.b ** 2 * self.evaluate(x)
        slope = np.gradient(self.f_samples, self.x_samples)
        return np.interp(x, self.x_samples, slope, left=0.0, right=0.0)

    def temporal_ft(self, v: float, omega: ArrayLike) -> ArrayLike:
        """
        Temporal Fourier transform of f(v t).

        Args:
            v: Beam speed (non-zero)
            omega: Angular frequency

        Returns:
            Complex f~(omega), units length^-2 * time

        Raises:
            ParameterError: If v is zero
        """
        if v == 0:
            raise ParameterError("v", "beam never traverses the window when v = 0")

        if self.is_gaussian:
            value = np.exp(-self.b ** 2 * np.square(omega) / (4.0 * v ** 2)) / (
                math.sqrt(2.0) * self.b * abs(v)
            )
            return value + 0j

        # x = v t; the sign of v flips the integration direction, absorbed by |v|
        x, f = self._support_samples()
        phase = np.exp(1j * np.multiply.outer(np.atleast_1d(omega) / v, x))
        value = trapezoid(phase * f, x, axis=-1) / (math.sqrt(2.0 * math.pi) * abs(v))
        return value[0] if np.ndim(omega) == 0 else value

    def spatial_ft(self, k: ArrayLike) -> ArrayLike:
        """
        Spatial Fourier transform of f(x).

        Args:
            k: Wavenumber

        Returns:
            Complex f-(k), units length^-1
        """
        if self.is_gaussian:
            value = np.exp(-np.square(k) * self.b ** 2 / 4.0) / (math.sqrt(2.0) * self.b)
            return value + 0j

        x, f = self._support_samples()
        phase = np.exp(-1j * np.multiply.outer(np.atleast_1d(k), x))
        value = trapezoid(phase * f, x, axis=-1) / math.sqrt(2.0 * math.pi)
        return value[0] if np.ndim(k) == 0 else value

    def sampled(self, n_points: int = 4001) -> "WindowFunction":
        """
        Tabulate this window over its effective support.

        Args:
            n_points: Number of samples

        Returns:
            Tabulated WindowFunction
        """
        lo, hi = self.effective_support(EDGE_DECAY * 1e-3)
        x = np.linspace(lo, hi, n_points)
        return WindowFunction.tabulated(x, self.evaluate(x))

    def _support_samples(self) -> Tuple[np.ndarray, np.ndarray]:
        """Stored samples restricted to the effective support."""
        lo, hi = self.effective_support()
        mask = (self.x_samples >= lo) & (self.x_samples <= hi)
        return self.x_samples[mask], self.f_samples[mask]
