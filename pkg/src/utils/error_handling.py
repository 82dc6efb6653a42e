"""Custom exceptions for the scattering simulation."""


class ScatterSimError(Exception):
    """Base exception for simulation-related errors."""
    pass


class ConfigurationError(ScatterSimError):
    """Raised when configuration is invalid."""
    pass


class UnknownConfigKeyError(ConfigurationError):
    """Raised when a config file contains a key the simulator does not know."""

    def __init__(self, key: str, message: str = None):
        self.key = key
        if message is None:
            message = f"Unknown config key: {key}"
        super().__init__(message)


class ParameterError(ConfigurationError):
    """Raised when a physical or numerical parameter is out of range."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class NumericalError(ScatterSimError):
    """Base exception for failures during a numerical computation."""
    pass


class IntegrationDivergedError(NumericalError):
    """Raised when the classical integrator produces a non-finite state."""

    def __init__(self, step: int, t: float, message: str = None):
        self.step = step
        self.t = t
        if message is None:
            message = f"Integration diverged at step {step} (t={t:.6g})"
        super().__init__(message)


class TruncationError(NumericalError):
    """Raised when a trajectory or window does not decay at its ends."""
    pass


class QuadratureError(NumericalError):
    """Raised when adaptive quadrature misses its tolerance."""

    def __init__(self, achieved: float, requested: float, message: str = None):
        self.achieved = achieved
        self.requested = requested
        if message is None:
            message = (
                f"Quadrature did not converge: achieved error {achieved:.3e}, "
                f"requested {requested:.3e}"
            )
        super().__init__(message)


class StabilityError(NumericalError):
    """Raised when a wavefunction stepper loses norm or violates its stability bound."""

    def __init__(self, step: int, drift: float, message: str = None):
        self.step = step
        self.drift = drift
        if message is None:
            message = f"Norm drift {drift:.3e} at step {step}"
        super().__init__(message)


class GridError(NumericalError):
    """Raised when a spatial grid is too narrow or grids are incompatible."""
    pass


class ChannelClosedError(NumericalError):
    """Raised when the beam cannot afford one oscillator quantum."""

    def __init__(self, k0: float, threshold: float):
        self.k0 = k0
        self.threshold = threshold
        super().__init__(
            f"Inelastic channel closed: k0={k0:.6g} below threshold {threshold:.6g}"
        )


class PerturbationRegimeError(NumericalError):
    """Raised when a first-order probability leaves the allowed regime."""

    def __init__(self, p1: float, limit: float):
        self.p1 = p1
        self.limit = limit
        super().__init__(
            f"First-order probability {p1:.6g} exceeds limit {limit:.6g}"
        )


class MeasurementError(ScatterSimError):
    """Raised when a measurement outcome is not allowed."""
    pass


class OutputGenerationError(ScatterSimError):
    """Raised when output generation fails."""
    pass
