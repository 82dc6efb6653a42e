"""
Tests for first-order perturbation theory.
"""

import cmath
import logging
import math

import pytest

from src.model.params import ModelParams
from src.perturbation.first_order import (
    drive_matrix_element,
    first_order_amplitudes,
    first_order_coefficient,
    interaction_interval,
    p1_full,
    p1_full_small_transfer,
    p1_partial,
    position_matrix_element,
)
from src.utils.error_handling import ChannelClosedError, PerturbationRegimeError

from tests.conftest import PRESET_P1_FULL_K7, PRESET_P1_PARTIAL_V7


class TestFirstOrderCoefficient:
    """Test the generic first-order amplitude integral."""

    def test_zero_element(self):
        """Test a vanishing matrix element gives no amplitude."""
        assert first_order_coefficient(lambda t: 0.0, 1.0, -5.0, 5.0) == 0j

    @pytest.mark.parametrize("hbar", [1.0, 2.0])
    def test_constant_element_grows_linearly(self, hbar):
        """Test a constant M at resonance gives -i M T / hbar."""
        element, duration = 0.3 - 0.1j, 5.0
        coefficient = first_order_coefficient(lambda t: element, 0.0, 0.0, duration, hbar=hbar)
        assert coefficient == pytest.approx(-1j * element * duration / hbar, abs=1e-12)

    def test_constant_element_off_resonance(self):
        """Test a constant M off resonance gives -M (e^{iwT} - 1) / (hbar w)."""
        element, omega, duration = 0.2, 3.0, 4.0
        coefficient = first_order_coefficient(lambda t: element, omega, 0.0, duration)
        expected = -element * (cmath.exp(1j * omega * duration) - 1.0) / omega
        assert coefficient == pytest.approx(expected, abs=1e-10)


class TestPartialQuantum:
    """Test the classically driven oscillator."""

    def test_preset_value(self, params, window):
        """Test P1 at v = 7."""
        result = p1_partial(params, window)
        assert result.p1 == pytest.approx(PRESET_P1_PARTIAL_V7, rel=1e-3)
        assert result.warnings == []

    def test_quadrature_matches_closed_form(self, params, window):
        """Test |c1|^2 from quad against the transform formula."""
        t0, t1 = interaction_interval(params, window)
        raw = first_order_coefficient(
            drive_matrix_element(params, window), params.omega0, t0, t1, points=[0.0],
        )
        assert abs(raw) ** 2 == pytest.approx(p1_partial(params, window).p1, rel=1e-6)

    def test_coefficient_magnitude(self, params, window):
        """Test the attached coefficient has |c|^2 = P1."""
        result = p1_partial(params, window)
        assert abs(result.coefficient) ** 2 == pytest.approx(result.p1, rel=1e-12)
        assert abs(result.phase) == pytest.approx(1.0)

    def test_zero_coupling(self, window):
        """Test alpha = 0 gives no excitation and a zero phase."""
        result = p1_partial(ModelParams.natural_units(alpha=0.0), window)
        assert result.p1 == 0.0
        assert result.phase == 0j

    def test_scales_with_alpha_squared(self, window):
        """Test P1 proportional to alpha^2."""
        weak = p1_partial(ModelParams.natural_units(alpha=1.0), window).p1
        strong = p1_partial(ModelParams.natural_units(alpha=3.0), window).p1
        assert strong == pytest.approx(9.0 * weak, rel=1e-12)


class TestFullQuantum:
    """Test the plane-wave beam result."""

    def test_preset_value(self, params, window):
        """Test P1 at k0 = 7."""
        result = p1_full(params, window, 7.0)
        assert result.p1 == pytest.approx(PRESET_P1_FULL_K7, rel=1e-3)
        assert result.kinematics.k1 == pytest.approx(math.sqrt(47.0))

    def test_small_transfer_equals_partial(self, params, window):
        """Test the -omega0/v transfer reproduces the partially quantum P1."""
        small = p1_full_small_transfer(params, window, 7.0).p1
        assert small == pytest.approx(p1_partial(params, window).p1, rel=1e-12)

    def test_exact_transfer_lower_than_partial(self, params, window):
        """Test the recoil correction reduces P1 at k0 = 7."""
        assert p1_full(params, window, 7.0).p1 < p1_partial(params, window).p1

    def test_closed_channel(self, params, window):
        """Test that sub-threshold k0 raises."""
        with pytest.raises(ChannelClosedError):
            p1_full(params, window, 1.0)

    def test_coefficient_is_imaginary(self, params, window):
        """Test the coefficient carries a factor i for a real window transform."""
        result = p1_full(params, window, 7.0)
        assert result.coefficient.real == pytest.approx(0.0, abs=1e-15)
        assert result.coefficient.imag > 0

    def test_to_record(self, params, window):
        """Test the record carries the kinematics."""
        record = p1_full(params, window, 7.0).to_record()
        assert record["k1"] == pytest.approx(math.sqrt(47.0))
        assert record["warnings"] == []


class TestRegime:
    """Test the validity checks."""

    def test_warning_above_threshold(self, window, caplog):
        """Test P1 above 0.1 warns but still returns."""
        params = ModelParams.natural_units(alpha=400.0)
        with caplog.at_level(logging.WARNING):
            result = p1_partial(params, window)
        assert 0.1 < result.p1 < 1.0
        assert len(result.warnings) == 1
        assert "unreliable" in caplog.text

    def test_custom_threshold(self, params, window):
        """Test a lower threshold flags the preset value."""
        result = p1_partial(params, window, validity_threshold=1e-7)
        assert result.warnings

    def test_probability_above_one_rejected(self, window):
        """Test P1 > 1 raises."""
        params = ModelParams.natural_units(alpha=1000.0)
        with pytest.raises(PerturbationRegimeError) as excinfo:
            p1_partial(params, window)
        assert excinfo.value.p1 > 1.0


class TestSelectionRule:
    """Test that only the first excited level is reached."""

    def test_matrix_elements(self, params):
        """Test <n|y|0> is sigma/sqrt(2) for n = 1 and zero otherwise."""
        assert position_matrix_element(1, 0, params) == pytest.approx(params.sigma_y / math.sqrt(2.0))
        assert position_matrix_element(0, 1, params) == pytest.approx(params.sigma_y / math.sqrt(2.0))
        assert position_matrix_element(2, 1, params) == pytest.approx(params.sigma_y)
        assert position_matrix_element(2, 0, params) == 0.0
        assert position_matrix_element(0, 0, params) == 0.0

    def test_negative_index(self, params):
        """Test negative levels are rejected."""
        with pytest.raises(ValueError):
            position_matrix_element(-1, 0, params)

    def test_higher_levels_vanish(self, params, window):
        """Test c_n = 0 for n >= 2 at first order."""
        amplitudes = first_order_amplitudes(params, window, n_max=4)
        assert amplitudes[1] != 0
        assert all(amplitudes[n] == 0 for n in (2, 3, 4))
        assert abs(amplitudes[1]) ** 2 == pytest.approx(p1_partial(params, window).p1, rel=1e-10)
