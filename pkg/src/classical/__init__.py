"""
Classical treatment: coupled equations of motion and closed-form energy transfer.
"""

from .integrator import (
    ClassicalState,
    ClassicalTrajectory,
    default_initial_state,
    default_time_window,
    fit_amplitude,
    integrate_classical,
    oscillation_amplitude,
    total_energy,
)
from .energy_transfer import (
    classical_amplitude_analytic,
    gaussian_amplitude_closed_form,
    gaussian_work_closed_form,
    work_on_beam_analytic,
    work_on_beam_numeric,
    work_on_oscillator_analytic,
)

__all__ = [
    'ClassicalState', 'ClassicalTrajectory', 'default_initial_state',
    'default_time_window', 'fit_amplitude', 'integrate_classical',
    'oscillation_amplitude', 'total_energy',
    'classical_amplitude_analytic', 'gaussian_amplitude_closed_form',
    'gaussian_work_closed_form', 'work_on_beam_analytic',
    'work_on_beam_numeric', 'work_on_oscillator_analytic',
]
