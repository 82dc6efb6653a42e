"""Configuration management for the scattering scenarios."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from src.model.params import ModelParams
from src.model.window import WindowFunction, WindowKind
from src.parsers.config_parser import ConfigParser, check_known_keys, dumps
from src.utils.error_handling import ConfigurationError, ParameterError

SCENARIOS = ("classical", "partial", "full", "measure", "sweep", "compare")

STEPPERS = ("implicit_midpoint", "leapfrog")

MOMENTUM_METHODS = ("spectral", "central")

# Single defaults table; every recognised key appears here
DEFAULTS: Dict[str, Any] = {
    "scenario": "compare",
    "hbar": 1.0,
    "m": 1.0,
    "mu": 100.0,
    "omega0": 1.0,
    "alpha": 1.0,
    "v": 7.0,
    "window.kind": "gaussian",
    "window.b": 10.0,
    "window.path": "",
    "numerics.dt": 1e-3,
    "numerics.t_span": 20.0,
    "numerics.grid_points": 513,
    "numerics.grid_half_width": 12.0,
    "numerics.stepper": "implicit_midpoint",
    "numerics.momentum_method": "spectral",
    "numerics.stride": 100,
    "numerics.seed": 12345,
    "numerics.n_samples": 100000,
    "numerics.workers": 1,
    "numerics.fit_periods": 10,
    "numerics.y_prime_max": 8.0,
    "numerics.y_prime_points": 401,
    "sweep.v_list": [],
    "sweep.alpha_list": [],
    "tolerances.amplitude": 0.01,
    "tolerances.amplitude_tdse": 0.02,
    "tolerances.p1_tdse": 0.05,
    "tolerances.p1_full": 0.05,
    "tolerances.validity": 0.1,
    "output.dir": "scenario_output",
    "output.excel": False,
}

PHYSICS_KEYS = ("hbar", "m", "mu", "omega0", "alpha", "v")

INTEGER_KEYS = {
    "numerics.grid_points",
    "numerics.stride",
    "numerics.seed",
    "numerics.n_samples",
    "numerics.workers",
    "numerics.fit_periods",
    "numerics.y_prime_points",
}


@dataclass(frozen=True)
class NumericsConfig:
    """Step sizes, grids, sampling and worker settings."""

    dt: float = 1e-3
    t_span: float = 20.0
    grid_points: int = 513
    grid_half_width: float = 12.0
    stepper: str = "implicit_midpoint"
    momentum_method: str = "spectral"
    stride: int = 100
    seed: int = 12345
    n_samples: int = 100000
    workers: int = 1
    fit_periods: int = 10
    y_prime_max: float = 8.0
    y_prime_points: int = 401


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative tolerances of the compare report and the perturbative validity bound."""

    amplitude: float = 0.01
    amplitude_tdse: float = 0.02
    p1_tdse: float = 0.05
    p1_full: float = 0.05
    validity: float = 0.1


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to run one scenario."""

    scenario: str = "compare"
    params: ModelParams = field(default_factory=ModelParams)
    window_kind: str = "gaussian"
    window_b: float = 10.0
    window_path: str = ""
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    v_list: List[float] = field(default_factory=list)
    alpha_list: List[float] = field(default_factory=list)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    output_dir: Path = Path("scenario_output")
    excel: bool = False

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScenarioConfig":
        """
        Build a configuration from flat dotted keys, filling in defaults.

        Args:
            data: Mapping of dotted keys to values

        Returns:
            ScenarioConfig instance

        Raises:
            UnknownConfigKeyError: If a key is not recognised
            ParameterError: If a value has the wrong type
        """
        check_known_keys(data, DEFAULTS)
        merged = {key: _coerce(key, data.get(key, default)) for key, default in DEFAULTS.items()}

        params = ModelParams(**{key: merged[key] for key in PHYSICS_KEYS})
        numerics = NumericsConfig(**{
            key.split(".", 1)[1]: value for key, value in merged.items() if key.startswith("numerics.")
        })
        tolerances = ToleranceConfig(**{
            key.split(".", 1)[1]: value for key, value in merged.items() if key.startswith("tolerances.")
        })

        return cls(
            scenario=merged["scenario"],
            params=params,
            window_kind=merged["window.kind"],
            window_b=merged["window.b"],
            window_path=merged["window.path"],
            numerics=numerics,
            v_list=list(merged["sweep.v_list"]),
            alpha_list=list(merged["sweep.alpha_list"]),
            tolerances=tolerances,
            output_dir=Path(merged["output.dir"]),
            excel=merged["output.excel"],
        )

    @classmethod
    def from_file(cls, config_path: Union[str, Path]) -> "ScenarioConfig":
        """
        Load configuration from a TOML file.

        Args:
            config_path: Path to configuration file

        Returns:
            ScenarioConfig instance
        """
        return cls.from_dict(ConfigParser(config_path).values)

    def to_dict(self) -> Dict[str, Any]:
        """Flat dotted-key mapping with every recognised key."""
        data: Dict[str, Any] = {"scenario": self.scenario}
        data.update(self.params.to_dict())
        data.update({
            "window.kind": self.window_kind,
            "window.b": self.window_b,
            "window.path": self.window_path,
        })
        data.update({f"numerics.{key}": value for key, value in vars(self.numerics).items()})
        data.update({
            "sweep.v_list": list(self.v_list),
            "sweep.alpha_list": list(self.alpha_list),
        })
        data.update({f"tolerances.{key}": value for key, value in vars(self.tolerances).items()})
        data.update({
            "output.dir": self.output_dir.as_posix(),
            "output.excel": self.excel,
        })
        return {key: data[key] for key in DEFAULTS}

    def to_toml(self) -> str:
        """Serialize to TOML text that from_file reads back unchanged."""
        return dumps(self.to_dict())

    def with_overrides(self,
                       output_dir: Optional[Path] = None,
                       seed: Optional[int] = None,
                       scenario: Optional[str] = None) -> "ScenarioConfig":
        """Apply command-line overrides."""
        data = self.to_dict()
        if output_dir is not None:
            data["output.dir"] = str(output_dir)
        if seed is not None:
            data["numerics.seed"] = seed
        if scenario is not None:
            data["scenario"] = scenario
        return ScenarioConfig.from_dict(data)

    def build_window(self) -> WindowFunction:
        """Window function described by the window.* keys."""
        if self.window_kind == WindowKind.TABULATED.value:
            return WindowFunction.from_csv(self.window_path)
        return WindowFunction.gaussian(self.window_b)

    def validate(self) -> None:
        """
        Validate every field before any computation starts.

        Raises:
            ParameterError: Naming the first invalid field
            ConfigurationError: If the scenario cannot run with these settings
        """
        if self.scenario not in SCENARIOS:
            raise ParameterError("scenario", f"must be one of {', '.join(SCENARIOS)}, got {self.scenario!r}")

        if self.window_kind not in {kind.value for kind in WindowKind}:
            raise ParameterError("window.kind", f"unknown window kind {self.window_kind!r}")
        if self.window_kind == WindowKind.GAUSSIAN.value:
            _require_positive("window.b", self.window_b)
        elif not self.window_path:
            raise ParameterError("window.path", "required for a tabulated window")
        elif not Path(self.window_path).exists():
            raise ParameterError("window.path", f"file not found: {self.window_path}")

        n = self.numerics
        _require_positive("numerics.dt", n.dt)
        _require_positive("numerics.t_span", n.t_span)
        _require_positive("numerics.y_prime_max", n.y_prime_max)
        if n.grid_points < 3:
            raise ParameterError("numerics.grid_points", f"need at least 3 points, got {n.grid_points}")
        if n.grid_half_width < 8:
            raise ParameterError("numerics.grid_half_width", f"need at least 8 sigma_y, got {n.grid_half_width}")
        if n.stepper not in STEPPERS:
            raise ParameterError("numerics.stepper", f"must be one of {', '.join(STEPPERS)}, got {n.stepper!r}")
        if n.momentum_method not in MOMENTUM_METHODS:
            raise ParameterError(
                "numerics.momentum_method",
                f"must be one of {', '.join(MOMENTUM_METHODS)}, got {n.momentum_method!r}",
            )
        for key in ("stride", "n_samples", "workers", "fit_periods"):
            if getattr(n, key) < 1:
                raise ParameterError(f"numerics.{key}", f"must be at least 1, got {getattr(n, key)}")
        if n.y_prime_points < 2:
            raise ParameterError("numerics.y_prime_points", f"need at least 2 points, got {n.y_prime_points}")
        if n.seed < 0:
            raise ParameterError("numerics.seed", f"must be non-negative, got {n.seed}")

        for key, value in vars(self.tolerances).items():
            if not (0 < value <= 1):
                raise ParameterError(f"tolerances.{key}", f"must lie in (0, 1], got {value}")

        for index, v in enumerate(self.v_list):
            if not math.isfinite(v) or v == 0:
                raise ParameterError(f"sweep.v_list[{index}]", f"beam speed must be finite and non-zero, got {v}")
        for index, alpha in enumerate(self.alpha_list):
            if not math.isfinite(alpha):
                raise ParameterError(f"sweep.alpha_list[{index}]", f"must be finite, got {alpha}")

        if self.scenario == "sweep" and not (self.v_list or self.alpha_list):
            raise ConfigurationError("Sweep scenario needs a non-empty sweep.v_list or sweep.alpha_list")

    def sweep_points(self) -> List[ModelParams]:
        """Parameter points of a sweep: v_list x alpha_list, each defaulting to the base value."""
        speeds = self.v_list or [self.params.v]
        couplings = self.alpha_list or [self.params.alpha]
        return [self.params.with_(v=v, alpha=alpha) for v in speeds for alpha in couplings]


def _require_positive(key: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ParameterError(key, f"must be positive, got {value}")


def _coerce(key: str, value: Any) -> Any:
    """Convert a raw TOML value to the type of its default."""
    default = DEFAULTS[key]
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ParameterError(key, f"expected true or false, got {value!r}")
        return value
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ParameterError(key, f"expected a string, got {value!r}")
        return value
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ParameterError(key, f"expected a list, got {value!r}")
        return [_number(key, item) for item in value]
    if key in INTEGER_KEYS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParameterError(key, f"expected an integer, got {value!r}")
        return value
    return _number(key, value)


def _number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(key, f"expected a number, got {value!r}")
    return float(value)
