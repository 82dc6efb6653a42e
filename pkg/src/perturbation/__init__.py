"""
First-order perturbation theory for the partially and fully quantum approaches.
"""

from .kinematics import ScatteringKinematics, scattered_wavenumber, threshold_wavenumber
from .first_order import (
    TransitionResult,
    drive_matrix_element,
    first_order_amplitudes,
    first_order_coefficient,
    p1_full,
    p1_full_small_transfer,
    p1_partial,
    position_matrix_element,
)

__all__ = [
    'ScatteringKinematics', 'scattered_wavenumber', 'threshold_wavenumber',
    'TransitionResult', 'drive_matrix_element', 'first_order_amplitudes',
    'first_order_coefficient', 'p1_full', 'p1_full_small_transfer',
    'p1_partial', 'position_matrix_element',
]
