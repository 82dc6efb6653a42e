"""
Tests for the classical Euler-Richardson integrator.
"""

import math

import numpy as np
import pytest

from src.classical.integrator import (
    TRAJECTORY_COLUMNS,
    ClassicalState,
    default_initial_state,
    default_time_window,
    fit_amplitude,
    integrate_classical,
    oscillation_amplitude,
    total_energy,
)
from src.classical.energy_transfer import classical_amplitude_analytic
from src.model.params import ModelParams
from src.utils.error_handling import IntegrationDivergedError, ParameterError

from tests.conftest import PRESET_Y_M


def _passage(params, window, dt=1e-3, prescribed_path=False):
    t0, t_end = default_time_window(params, window)
    initial = default_initial_state(params, window, t0)
    return integrate_classical(params, window, initial, dt, t_end, prescribed_path=prescribed_path)


class TestTimeWindow:
    """Test the default start and stop times."""

    def test_symmetric_span_when_long_enough(self, window):
        """Test that the span is +/- 20 b/v when the fit tail already fits."""
        params = ModelParams.natural_units(v=1.0)
        t0, t_end = default_time_window(params, window)
        assert t0 == pytest.approx(-200.0)
        assert t_end == pytest.approx(200.0)

    def test_extended_for_fit_tail(self, params, window):
        """Test that t_end leaves fit_periods periods after decoupling."""
        t0, t_end = default_time_window(params, window, fit_periods=10)
        assert t0 == pytest.approx(-200.0 / 7.0)
        assert t_end >= 10 * 2.0 * math.pi

    def test_initial_state_is_decoupled(self, params, window):
        """Test that the default start sits outside the window."""
        t0, _ = default_time_window(params, window)
        state = default_initial_state(params, window, t0)
        assert state.x == pytest.approx(-200.0)
        assert state.p_x == pytest.approx(7.0)
        assert window.evaluate(state.x) < 1e-12 * window.peak()


class TestIntegrateClassical:
    """Test trajectories of the coupled system."""

    @pytest.mark.timeout(60)
    @pytest.mark.parametrize("v", [3.0, 7.0, 15.0])
    def test_amplitude_matches_closed_form(self, window, v):
        """Test the post-passage amplitude within 1% of the Fourier-transform prediction."""
        params = ModelParams.natural_units(v=v)
        traj = _passage(params, window)
        y_m = fit_amplitude(traj, params, periods=10)
        assert classical_amplitude_analytic(params, window) == pytest.approx(PRESET_Y_M[v], rel=1e-3)
        assert y_m == pytest.approx(classical_amplitude_analytic(params, window), rel=0.01)

    @pytest.mark.timeout(120)
    def test_second_order_convergence(self, params, window):
        """Test halving dt cuts the amplitude change about fourfold."""
        coarse, medium, fine = (
            fit_amplitude(_passage(params, window, dt=dt), params) for dt in (4e-3, 2e-3, 1e-3)
        )
        ratio = abs(coarse - medium) / abs(medium - fine)
        assert ratio == pytest.approx(4.0, rel=0.25)

    @pytest.mark.timeout(60)
    def test_adiabatic_passage_leaves_no_oscillation(self, window):
        """Test that a slow beam (v = 1) leaves an amplitude below 1e-10."""
        params = ModelParams.natural_units(v=1.0)
        traj = _passage(params, window)
        assert fit_amplitude(traj, params) < 1e-10

    @pytest.mark.timeout(60)
    def test_energy_conserved(self, params, window):
        """Test relative drift of H below 1e-6 at dt = 1e-3."""
        traj = _passage(params, window)
        assert traj.energy_drift(params.m) < 1e-6

    def test_uncoupled_oscillator_stays_at_rest(self, window):
        """Test that alpha = 0 leaves y identically zero and the beam free."""
        params = ModelParams.natural_units(alpha=0.0)
        initial = ClassicalState(t=-30.0, x=-210.0, p_x=7.0, y=0.0, p_y=0.0)
        traj = integrate_classical(params, window, initial, 1e-2, 30.0)
        assert np.all(traj.y == 0.0)
        assert traj.p_x == pytest.approx(np.full(len(traj), 7.0))
        assert traj.x[-1] == pytest.approx(210.0)

    def test_free_oscillation_period(self, window):
        """Test that an uncoupled displaced oscillator returns after one period."""
        params = ModelParams.natural_units(alpha=0.0)
        initial = ClassicalState(t=0.0, x=-500.0, p_x=7.0, y=0.05, p_y=0.0)
        traj = integrate_classical(params, window, initial, 1e-3, 2.0 * math.pi)
        assert traj.y[-1] == pytest.approx(0.05, rel=1e-5)

    @pytest.mark.timeout(60)
    def test_prescribed_path_agrees_for_heavy_oscillator(self, params, window):
        """Test that holding the beam on x = v t barely changes the amplitude."""
        free = fit_amplitude(_passage(params, window), params)
        driven = fit_amplitude(_passage(params, window, prescribed_path=True), params)
        assert driven == pytest.approx(free, rel=1e-3)

    def test_start_inside_window_rejected(self, params, window):
        """Test that the integrator requires a decoupled start."""
        initial = ClassicalState(t=0.0, x=0.0, p_x=7.0, y=0.0, p_y=0.0)
        with pytest.raises(ParameterError, match="interaction window"):
            integrate_classical(params, window, initial, 1e-3, 1.0)

    def test_invalid_step(self, params, window):
        """Test that dt must be positive."""
        initial = default_initial_state(params, window, -30.0)
        with pytest.raises(ParameterError, match="numerics.dt"):
            integrate_classical(params, window, initial, 0.0, 1.0)

    def test_divergence_reported(self, window):
        """Test that an unstable step raises with the step number."""
        params = ModelParams(mu=1e-6, alpha=0.0)
        initial = ClassicalState(t=0.0, x=-500.0, p_x=7.0, y=1.0, p_y=0.0)
        with pytest.raises(IntegrationDivergedError) as excinfo:
            integrate_classical(params, window, initial, 1.0, 20000.0)
        assert excinfo.value.step > 0

    def test_total_energy_of_state(self, params, window):
        """Test H for a decoupled state."""
        state = ClassicalState(t=0.0, x=-500.0, p_x=7.0, y=0.1, p_y=0.0)
        assert total_energy(state, params, window) == pytest.approx(24.5 + 0.5 * 100.0 * 0.01)


class TestTrajectoryOutput:
    """Test tabulation of trajectories."""

    def test_to_frame_columns_and_stride(self, params, window):
        """Test CSV columns and that the last sample is kept."""
        initial = default_initial_state(params, window, -30.0)
        traj = integrate_classical(params, window, initial, 0.1, 0.05)
        frame = traj.to_frame(stride=7)
        assert list(frame.columns) == TRAJECTORY_COLUMNS
        assert frame["t"].iloc[-1] == pytest.approx(traj.t[-1])
        assert frame["t"].iloc[1] == pytest.approx(traj.t[7])

    def test_invalid_stride(self, params, window):
        """Test that stride must be at least 1."""
        initial = default_initial_state(params, window, -30.0)
        traj = integrate_classical(params, window, initial, 0.1, -29.0)
        with pytest.raises(ParameterError):
            traj.to_frame(stride=0)


class TestOscillationAmplitude:
    """Test the least-squares amplitude fit."""

    def test_recovers_known_amplitude(self):
        """Test A cos(w t + phi) with arbitrary phase."""
        t = np.linspace(0.0, 30.0, 3001)
        values = 2.5e-4 * np.cos(t + 0.7)
        assert oscillation_amplitude(t, values, 1.0) == pytest.approx(2.5e-4, rel=1e-10)

    def test_uses_tail_only(self):
        """Test that periods restricts the fit to the end of the series."""
        t = np.linspace(0.0, 100.0, 10001)
        values = np.where(t < 50.0, 0.0, 1e-3 * np.sin(t))
        assert oscillation_amplitude(t, values, 1.0, periods=5) == pytest.approx(1e-3, rel=1e-6)
