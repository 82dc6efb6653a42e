"""
Pytest configuration and fixtures for the scattering simulator tests.

This module provides the preset parameters, windows, grids and config
files shared across the test modules.
"""

import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.model.params import ModelParams
from src.model.window import WindowFunction
from src.tdse.grid import Grid1D
from src.twoparticle.final_state import FinalStateAmplitudes
from src.utils.config import ScenarioConfig


# Reference values at hbar = omega0 = m = 1, mu = 100, b = 10, alpha = 1
PRESET_Y_M = {3.0: 3.675e-5, 7.0: 1.5203e-4, 15.0: 1.0574e-4}
PRESET_W_HO_V7 = 1.1557e-6
PRESET_P1_PARTIAL_V7 = 1.1556e-6
PRESET_P1_FULL_K7 = 1.1314e-6


@pytest.fixture
def params():
    """Preset parameters with v = 7."""
    return ModelParams.natural_units(v=7.0, alpha=1.0)


@pytest.fixture
def window():
    """Gaussian window with b = 10."""
    return WindowFunction.gaussian(10.0)


@pytest.fixture
def grid(params):
    """Default grid, +/- 12 sigma_y with 513 points."""
    return Grid1D.default_for(params)


@pytest.fixture
def short_window():
    """Narrow gaussian window for short evolutions."""
    return WindowFunction.gaussian(2.0)


@pytest.fixture
def strong_state():
    """Normalized two-branch state with |c1|^2 = 0.2 and k0 = 7."""
    return FinalStateAmplitudes(
        c0=math.sqrt(0.8) + 0j,
        c1=1j * math.sqrt(0.2),
        k0=7.0,
        k1=math.sqrt(47.0),
        e_total=24.5 + 0.5,
    )


@pytest.fixture
def tabulated_window_csv(tmp_path):
    """CSV file sampling the b = 10 gaussian on x in [-80, 80]."""
    x = np.linspace(-80.0, 80.0, 8001)
    f = np.exp(-x ** 2 / 100.0) / 100.0
    path = tmp_path / "window.csv"
    pd.DataFrame({"x": x, "f": f}).to_csv(path, index=False)
    return path


@pytest.fixture
def create_config_file(tmp_path):
    """Factory writing a TOML config file from text."""
    def _create_config(text: str, filename: str = "scenario.toml") -> Path:
        path = tmp_path / filename
        path.write_text(text)
        return path
    return _create_config


@pytest.fixture
def fast_config(tmp_path):
    """Config with coarse numerics so scenarios finish quickly."""
    return ScenarioConfig.from_dict({
        "window.b": 2.0,
        "v": 7.0,
        "numerics.dt": 0.01,
        "numerics.t_span": 6.0,
        "numerics.grid_points": 129,
        "numerics.stride": 10,
        "numerics.n_samples": 2000,
        "numerics.fit_periods": 2,
        "numerics.y_prime_points": 21,
        "output.dir": str(tmp_path / "out"),
    })


@pytest.fixture
def test_output_dir(tmp_path):
    """Provide a clean output directory."""
    output_dir = tmp_path / "scenario_output"
    output_dir.mkdir()
    return output_dir


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers automatically."""
    for item in items:
        if "integration" in item.nodeid or "end_to_end" in item.nodeid:
            item.add_marker(pytest.mark.integration)

        if any(keyword in item.nodeid for keyword in ["full_passage", "convergence", "million"]):
            item.add_marker(pytest.mark.slow)
