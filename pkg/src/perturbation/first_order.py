"""
First-order time-dependent perturbation theory for the 0 -> 1 excitation.

The generic coefficient

    c_f = -(i / hbar) * integral <f|H1(t)|i> exp(i w_fi t) dt

is evaluated by adaptive quadrature. The closed-form probabilities of the
partially quantum approach (classical beam as a drive f(v t)) and of the
fully quantum approach (plane-wave beam, energy conservation fixing k1)
are built on top of it.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence
import logging
import warnings

from scipy.integrate import IntegrationWarning, quad

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.utils.error_handling import PerturbationRegimeError, QuadratureError
from .kinematics import ScatteringKinematics, scattered_wavenumber

logger = logging.getLogger(__name__)

QUADRATURE_TOLERANCE = 1e-10

# First-order results above this probability are flagged, not rejected
VALIDITY_THRESHOLD = 0.1


@dataclass
class TransitionResult:
    """First-order transition probability with its complex amplitude."""
    p1: float
    coefficient: complex
    omega_fi: float
    kinematics: Optional[ScatteringKinematics] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def phase(self) -> complex:
        """Unit-modulus phase of the coefficient (0 when the coefficient vanishes)."""
        magnitude = abs(self.coefficient)
        return self.coefficient / magnitude if magnitude > 0 else 0j

    def to_record(self) -> Dict[str, object]:
        """JSON-ready record."""
        return {
            "p1": self.p1,
            "coefficient_re": self.coefficient.real,
            "coefficient_im": self.coefficient.imag,
            "omega_fi": self.omega_fi,
            "k0": self.kinematics.k0 if self.kinematics else None,
            "k1": self.kinematics.k1 if self.kinematics else None,
            "delta_k": self.kinematics.delta_k if self.kinematics else None,
            "warnings": list(self.warnings),
        }


def first_order_coefficient(matrix_element: Callable[[float], complex],
                            omega_fi: float,
                            t0: float,
                            t1: float,
                            hbar: float = 1.0,
                            tolerance: float = QUADRATURE_TOLERANCE,
                            points: Optional[Sequence[float]] = None) -> complex:
    """
    First-order amplitude for a transition i -> f (i != f).

    Args:
        matrix_element: t -> <f|H1(t)|i> (energy units)
        omega_fi: Transition frequency (E_f - E_i) / hbar
        t0: Start of the interaction interval
        t1: End of the interaction interval
        hbar: Reduced Planck constant
        tolerance: Absolute quadrature tolerance
        points: Optional break points where the integrand is sharply peaked

    Returns:
        Complex coefficient c_f

    Raises:
        QuadratureError: If quad does not reach the tolerance
    """
    def real_part(t: float) -> float:
        return (matrix_element(t) * cmath.exp(1j * omega_fi * t)).real

    def imag_part(t: float) -> float:
        return (matrix_element(t) * cmath.exp(1j * omega_fi * t)).imag

    if points is not None:
        points = [p for p in points if t0 < p < t1] or None

    parts = []
    for integrand in (real_part, imag_part):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            result = quad(
                integrand, t0, t1,
                epsabs=tolerance,
                epsrel=tolerance,
                limit=500,
                points=points,
                full_output=1,
            )
        value, abserr = result[0], result[1]
        if len(result) > 3 and abserr > tolerance:
            raise QuadratureError(abserr, tolerance)
        parts.append(value)

    return -1j / hbar * complex(parts[0], parts[1])


def drive_matrix_element(params: ModelParams, f: WindowFunction) -> Callable[[float], float]:
    """
    <1|H1(t)|0> for the classical drive, -alpha * sqrt(hbar / 2 mu omega0) * f(v t).

    Args:
        params: Model parameters
        f: Window function

    Returns:
        Function of time
    """
    scale = -params.alpha * position_matrix_element(1, 0, params)
    v = params.v

    def element(t: float) -> float:
        return scale * float(f.evaluate(v * t))

    return element


def interaction_interval(params: ModelParams, f: WindowFunction) -> tuple:
    """Times during which f(v t) exceeds the support threshold."""
    lo, hi = f.effective_support()
    times = sorted((lo / params.v, hi / params.v))
    return times[0], times[1]


def p1_partial(params: ModelParams,
               f: WindowFunction,
               validity_threshold: float = VALIDITY_THRESHOLD) -> TransitionResult:
    """
    Excitation probability of an oscillator driven by a classical beam.

    P1 = pi alpha^2 |f~(omega0)|^2 / (hbar mu omega0); the coefficient carries
    the phase of the quadrature-evaluated first-order amplitude.

    Args:
        params: Model parameters
        f: Window function
        validity_threshold: P1 above which a validity warning is attached

    Returns:
        TransitionResult

    Raises:
        PerturbationRegimeError: If P1 > 1
    """
    f_tilde = abs(f.temporal_ft(params.v, params.omega0))
    p1 = math.pi * params.alpha ** 2 * f_tilde ** 2 / (params.hbar * params.mu * params.omega0)

    t0, t1 = interaction_interval(params, f)
    raw = first_order_coefficient(
        drive_matrix_element(params, f), params.omega0, t0, t1,
        hbar=params.hbar, points=[0.0],
    )
    magnitude = abs(raw)
    coefficient = math.sqrt(p1) * raw / magnitude if magnitude > 0 else 0j

    result = TransitionResult(p1=p1, coefficient=coefficient, omega_fi=params.omega0)
    _check_regime(result, validity_threshold)
    return result


def p1_full(params: ModelParams,
            f: WindowFunction,
            k0: float,
            validity_threshold: float = VALIDITY_THRESHOLD) -> TransitionResult:
    """
    Excitation probability with a quantum plane-wave beam.

    P1 = pi alpha^2 |f-(k1 - k0)|^2 / (hbar mu omega0 v^2) with v = hbar k0 / m;
    params.v is not used.

    Args:
        params: Model parameters
        f: Window function
        k0: Incident wavenumber

    Returns:
        TransitionResult with kinematics attached

    Raises:
        ChannelClosedError: If the channel is closed at k0
        PerturbationRegimeError: If P1 > 1
    """
    kinematics = scattered_wavenumber(k0, params)
    return _p1_from_transfer(params, f, kinematics, kinematics.delta_k, validity_threshold)


def p1_full_small_transfer(params: ModelParams,
                           f: WindowFunction,
                           k0: float,
                           validity_threshold: float = VALIDITY_THRESHOLD) -> TransitionResult:
    """Same as p1_full with the momentum transfer replaced by -omega0 / v."""
    kinematics = scattered_wavenumber(k0, params)
    return _p1_from_transfer(params, f, kinematics, kinematics.delta_k_approx, validity_threshold)


def _p1_from_transfer(params: ModelParams,
                      f: WindowFunction,
                      kinematics: ScatteringKinematics,
                      delta_k: float,
                      validity_threshold: float) -> TransitionResult:
    v = params.speed_from_wavenumber(kinematics.k0)
    f_bar = complex(f.spatial_ft(delta_k))

    # c = (i / hbar) (alpha / v) sqrt(hbar pi / mu omega0) f-(delta_k)
    coefficient = (
        1j / params.hbar * params.alpha / v
        * math.sqrt(params.hbar * math.pi / (params.mu * params.omega0)) * f_bar
    )
    p1 = (
        math.pi * params.alpha ** 2 * abs(f_bar) ** 2
        / (params.hbar * params.mu * params.omega0 * v ** 2)
    )

    result = TransitionResult(
        p1=p1, coefficient=coefficient, omega_fi=params.omega0, kinematics=kinematics,
    )
    _check_regime(result, validity_threshold)
    return result


def _check_regime(result: TransitionResult, validity_threshold: float) -> None:
    if result.p1 > 1.0:
        raise PerturbationRegimeError(result.p1, 1.0)
    if result.p1 > validity_threshold:
        message = (
            f"P1={result.p1:.4g} exceeds {validity_threshold:g}; "
            "first-order perturbation theory is unreliable"
        )
        result.warnings.append(message)
        logger.warning(message)


def position_matrix_element(n: int, n_prime: int, params: ModelParams) -> float:
    """
    Oscillator matrix element <n|y|n'> = sigma_y / sqrt(2) * (sqrt(n') d_{n,n'-1} + sqrt(n'+1) d_{n,n'+1}).

    Args:
        n: Bra index
        n_prime: Ket index
        params: Model parameters

    Returns:
        Matrix element (length)
    """
    if n < 0 or n_prime < 0:
        raise ValueError("Oscillator indices must be non-negative")
    scale = params.sigma_y / math.sqrt(2.0)
    if n == n_prime - 1:
        return scale * math.sqrt(n_prime)
    if n == n_prime + 1:
        return scale * math.sqrt(n_prime + 1)
    return 0.0


def first_order_amplitudes(params: ModelParams, f: WindowFunction, n_max: int = 4) -> Dict[int, complex]:
    """
    First-order amplitudes from the ground state to |n>, n = 1..n_max, for the classical drive.

    c_n = (i alpha / hbar) <n|y|0> sqrt(2 pi) f~(n omega0); only n = 1 survives.

    Args:
        params: Model parameters
        f: Window function
        n_max: Highest level reported

    Returns:
        Mapping n -> c_n
    """
    amplitudes = {}
    for n in range(1, n_max + 1):
        element = position_matrix_element(n, 0, params)
        if element == 0.0:
            amplitudes[n] = 0j
            continue
        f_tilde = complex(f.temporal_ft(params.v, n * params.omega0))
        amplitudes[n] = 1j * params.alpha / params.hbar * element * math.sqrt(2.0 * math.pi) * f_tilde
    return amplitudes
