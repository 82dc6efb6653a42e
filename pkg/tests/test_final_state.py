"""
Tests for the two-branch final state and its reduction to the oscillator.
"""

import logging
import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from src.model.params import ModelParams
from src.twoparticle.final_state import (
    BRANCH_COLUMNS,
    FinalStateAmplitudes,
    branch_density_table,
    build_final_state,
    default_y_values,
    expectation_y_reduced,
    initial_energy,
    reduce_to_oscillator,
    reduced_amplitude,
    scattering_phase,
)
from src.twoparticle.measurement import measure_beam_momentum
from src.utils.error_handling import ChannelClosedError, ParameterError, PerturbationRegimeError

from tests.conftest import PRESET_P1_FULL_K7


class TestBuildFinalState:
    """Test construction from the first-order result."""

    def test_preset_amplitudes(self, params, window):
        """Test |c1| and normalization at k0 = 7."""
        state = build_final_state(params, window, 7.0)
        assert abs(state.c1) == pytest.approx(1.0637e-3, rel=1e-3)
        assert state.norm_squared == pytest.approx(1.0, abs=1e-14)
        assert state.k1 == pytest.approx(math.sqrt(47.0))
        assert state.is_perturbative()

    def test_unnormalized_state(self, params, window):
        """Test the raw first-order state keeps c0 = 1."""
        state = build_final_state(params, window, 7.0, normalize=False)
        assert state.c0 == 1.0
        assert abs(state.c1) ** 2 == pytest.approx(PRESET_P1_FULL_K7, rel=1e-3)
        assert state.norm_squared == pytest.approx(1.0 + PRESET_P1_FULL_K7, rel=1e-9)
        assert not state.normalized

    def test_phase_is_unit(self, params, window):
        """Test d1 is a unit phase."""
        state = build_final_state(params, window, 7.0)
        assert abs(state.d1) == pytest.approx(1.0)
        assert abs(scattering_phase(params, window, 7.0)) == pytest.approx(1.0)

    def test_zero_coupling(self, window):
        """Test alpha = 0 leaves only the elastic branch."""
        state = build_final_state(ModelParams.natural_units(alpha=0.0), window, 7.0)
        assert state.c1 == 0
        assert state.d1 == 0
        assert state.weights == (1.0, 0.0)

    def test_energy(self, params, window):
        """Test E_i = hbar^2 k0^2 / 2m + hbar omega0 / 2."""
        assert initial_energy(7.0, params) == pytest.approx(25.0)
        assert build_final_state(params, window, 7.0).e_total == pytest.approx(25.0)

    def test_closed_channel(self, params, window):
        """Test sub-threshold k0 raises."""
        with pytest.raises(ChannelClosedError):
            build_final_state(params, window, 1.0)

    def test_nonperturbative_rejected(self, window):
        """Test a strong coupling above the validity threshold raises."""
        params = ModelParams.natural_units(alpha=400.0)
        with pytest.raises(PerturbationRegimeError):
            build_final_state(params, window, 7.0)

    def test_nonperturbative_allowed(self, window, caplog):
        """Test the override builds the state with a warning."""
        params = ModelParams.natural_units(alpha=400.0)
        with caplog.at_level(logging.WARNING):
            state = build_final_state(params, window, 7.0, allow_nonperturbative=True)
        assert state.weights[1] > 0.1
        assert "perturbative" in caplog.text


class TestFinalStateAmplitudes:
    """Test the amplitude container."""

    def test_rejects_unnormalized(self):
        """Test a normalized state must have unit norm."""
        with pytest.raises(ParameterError):
            FinalStateAmplitudes(c0=1.0, c1=0.5, k0=7.0, k1=math.sqrt(47.0), e_total=25.0)

    def test_weights_divide_by_norm(self):
        """Test weights are Born probabilities for an unnormalized state."""
        state = FinalStateAmplitudes(c0=1.0, c1=1.0, k0=7.0, k1=math.sqrt(47.0), e_total=25.0, normalized=False)
        assert state.weights == pytest.approx((0.5, 0.5))

    def test_to_record(self, strong_state):
        """Test the record carries both weights."""
        record = strong_state.to_record()
        assert record["p_k1"] == pytest.approx(0.2)
        assert record["c1_im"] == pytest.approx(math.sqrt(0.2))


class TestReducedOscillator:
    """Test the oscillator after tracing out the beam."""

    def test_preset_amplitude(self, params, window):
        """Test the <y> oscillation amplitude at k0 = 7."""
        state = build_final_state(params, window, 7.0)
        assert reduced_amplitude(state, params) == pytest.approx(1.504e-4, rel=1e-3)

    def test_expectation_oscillates(self, params, strong_state):
        """Test <y>(t) oscillates at omega0 with the reduced amplitude."""
        t = np.linspace(0.0, 2.0 * math.pi, 2001)
        values = expectation_y_reduced(strong_state, t, params)
        amplitude = reduced_amplitude(strong_state, params)
        assert np.max(np.abs(values)) == pytest.approx(amplitude, rel=1e-5)
        assert values[0] == pytest.approx(values[-1])

    def test_scalar_time(self, params, strong_state):
        """Test a scalar time returns a float."""
        assert isinstance(expectation_y_reduced(strong_state, 0.0, params), float)

    def test_branch_phases(self, params, strong_state):
        """Test the branch amplitudes rotate at omega0/2 and 3 omega0/2."""
        a0, a1 = reduce_to_oscillator(strong_state, math.pi, params)
        assert a0 == pytest.approx(strong_state.c0 * -1j)
        assert a1 == pytest.approx(strong_state.c1 * 1j)

    def test_branch_density_table(self, params, strong_state):
        """Test the density columns and total normalization."""
        table = branch_density_table(strong_state, params)
        assert list(table.columns) == BRANCH_COLUMNS
        total = trapezoid(table["total"], table["y"])
        assert total == pytest.approx(1.0, abs=1e-6)
        assert trapezoid(table["density_k1"], table["y"]) == pytest.approx(0.2, abs=1e-6)

    def test_default_y_values(self, params):
        """Test the default positions span +/- 8 sigma."""
        y = default_y_values(params)
        assert len(y) == 401
        assert y[-1] == pytest.approx(0.8)
        with pytest.raises(ParameterError):
            default_y_values(params, points=1)

    def test_excited_posterior_has_no_oscillation(self, params, strong_state):
        """Test an energy eigenstate left by a k1 outcome has <y> = 0 at all times."""
        posterior = measure_beam_momentum(strong_state, strong_state.k1).posterior
        t = np.linspace(0.0, 2.0 * math.pi, 17)
        assert np.allclose(expectation_y_reduced(posterior, t, params), 0.0, atol=1e-15)
