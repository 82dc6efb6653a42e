"""
Tests for scenario configuration.
"""

from pathlib import Path

import pytest

from src.model.window import WindowKind
from src.utils.config import DEFAULTS, ScenarioConfig
from src.utils.error_handling import ConfigurationError, ParameterError, UnknownConfigKeyError


class TestDefaults:
    """Test the defaults table."""

    def test_empty_config_is_preset(self):
        """Test no keys gives the natural-unit preset."""
        config = ScenarioConfig.from_dict({})
        assert config.params.mu == 100.0
        assert config.params.v == 7.0
        assert config.window_b == 10.0
        assert config.numerics.dt == 1e-3
        assert config.numerics.seed == 12345
        assert config.tolerances.p1_tdse == 0.05
        assert config.output_dir == Path("scenario_output")
        assert config.excel is False
        config.validate()

    def test_to_dict_has_every_key(self):
        """Test the flat mapping lists every recognised key in order."""
        assert list(ScenarioConfig.from_dict({}).to_dict()) == list(DEFAULTS)

    def test_shipped_presets_load(self):
        """Test the bundled config files are valid."""
        root = Path(__file__).resolve().parent.parent / "configs"
        for name in ("preset.toml", "speed_sweep.toml"):
            ScenarioConfig.from_file(root / name).validate()


class TestLoading:
    """Test loading and coercion."""

    def test_from_file(self, create_config_file):
        """Test values from a file override defaults."""
        path = create_config_file(
            'scenario = "sweep"\nalpha = 2\n[sweep]\nv_list = [3, 7.5]\n[numerics]\nworkers = 2\n'
        )
        config = ScenarioConfig.from_file(path)
        assert config.scenario == "sweep"
        assert config.params.alpha == 2.0
        assert isinstance(config.params.alpha, float)
        assert config.v_list == [3.0, 7.5]
        assert config.numerics.workers == 2

    def test_unknown_key(self, create_config_file):
        """Test an unrecognised key fails with its name."""
        path = create_config_file('[numerics]\ntimestep = 0.1\n')
        with pytest.raises(UnknownConfigKeyError, match="numerics.timestep"):
            ScenarioConfig.from_file(path)

    def test_negative_mass_rejected(self):
        """Test a negative mu names the field."""
        with pytest.raises(ParameterError) as excinfo:
            ScenarioConfig.from_dict({"mu": -1.0})
        assert excinfo.value.field == "mu"

    @pytest.mark.parametrize("key,value", [
        ("numerics.grid_points", 100.5),
        ("numerics.seed", True),
        ("window.kind", 3),
        ("sweep.v_list", 7.0),
        ("output.excel", "yes"),
        ("alpha", "strong"),
    ])
    def test_wrong_types(self, key, value):
        """Test values of the wrong type raise."""
        with pytest.raises(ParameterError, match=key):
            ScenarioConfig.from_dict({key: value})

    def test_toml_round_trip(self, create_config_file):
        """Test to_toml output reads back to the same configuration."""
        original = ScenarioConfig.from_dict({"alpha": 0.5, "sweep.v_list": [3.0, 15.0], "output.excel": True})
        path = create_config_file(original.to_toml(), "round_trip.toml")
        assert ScenarioConfig.from_file(path).to_dict() == original.to_dict()

    def test_with_overrides(self, tmp_path):
        """Test command-line overrides replace the file values."""
        config = ScenarioConfig.from_dict({}).with_overrides(output_dir=tmp_path, seed=7, scenario="measure")
        assert config.output_dir == tmp_path
        assert config.numerics.seed == 7
        assert config.scenario == "measure"


class TestValidation:
    """Test validate()."""

    @pytest.mark.parametrize("changes,field", [
        ({"scenario": "quantum"}, "scenario"),
        ({"window.b": 0.0}, "window.b"),
        ({"window.kind": "lorentzian"}, "window.kind"),
        ({"window.kind": "tabulated"}, "window.path"),
        ({"numerics.dt": -0.1}, "numerics.dt"),
        ({"numerics.grid_points": 2}, "numerics.grid_points"),
        ({"numerics.grid_half_width": 4.0}, "numerics.grid_half_width"),
        ({"numerics.stepper": "euler"}, "numerics.stepper"),
        ({"numerics.momentum_method": "forward"}, "numerics.momentum_method"),
        ({"numerics.stride": 0}, "numerics.stride"),
        ({"numerics.seed": -1}, "numerics.seed"),
        ({"tolerances.amplitude": 0.0}, "tolerances.amplitude"),
        ({"tolerances.amplitude_tdse": 1.5}, "tolerances.amplitude_tdse"),
        ({"sweep.v_list": [7.0, 0.0]}, "sweep.v_list[1]"),
    ])
    def test_invalid_fields(self, changes, field):
        """Test each invalid field is named."""
        config = ScenarioConfig.from_dict(changes)
        with pytest.raises(ParameterError) as excinfo:
            config.validate()
        assert excinfo.value.field == field

    def test_empty_sweep(self):
        """Test a sweep without points is a configuration error."""
        config = ScenarioConfig.from_dict({"scenario": "sweep"})
        with pytest.raises(ConfigurationError, match="non-empty"):
            config.validate()

    def test_missing_tabulated_file(self, tmp_path):
        """Test a tabulated window path must exist."""
        config = ScenarioConfig.from_dict({"window.kind": "tabulated", "window.path": str(tmp_path / "none.csv")})
        with pytest.raises(ParameterError, match="not found"):
            config.validate()


class TestDerived:
    """Test window construction and sweep points."""

    def test_gaussian_window(self):
        """Test the gaussian window uses window.b."""
        window = ScenarioConfig.from_dict({"window.b": 4.0}).build_window()
        assert window.is_gaussian
        assert window.kind == WindowKind.GAUSSIAN

    def test_tabulated_window(self, tabulated_window_csv):
        """Test a tabulated window is read from CSV."""
        config = ScenarioConfig.from_dict({"window.kind": "tabulated", "window.path": str(tabulated_window_csv)})
        config.validate()
        assert not config.build_window().is_gaussian

    def test_sweep_points_product(self):
        """Test v_list x alpha_list."""
        config = ScenarioConfig.from_dict({"sweep.v_list": [3.0, 7.0], "sweep.alpha_list": [0.5, 1.0, 2.0]})
        points = config.sweep_points()
        assert len(points) == 6
        assert (points[0].v, points[0].alpha) == (3.0, 0.5)
        assert (points[-1].v, points[-1].alpha) == (7.0, 2.0)

    def test_sweep_points_default_alpha(self):
        """Test an empty alpha_list uses the base coupling."""
        config = ScenarioConfig.from_dict({"alpha": 2.0, "sweep.v_list": [3.0, 7.0]})
        assert [p.alpha for p in config.sweep_points()] == [2.0, 2.0]
