"""
Partially quantum approach: the oscillator wavefunction driven by a classical beam.
"""

from .grid import (
    Grid1D,
    WaveFunction1D,
    displaced_ground_state,
    ho_eigenstate,
    ho_log_density,
    ho_wavefunction,
    superpose,
)
from .observables import (
    HISTORY_COLUMNS,
    TdseHistory,
    TdseSample,
    ehrenfest_residual,
    expectation_p,
    expectation_y,
    overlap,
    overlap_probability,
    snapshot_frame,
)
from .propagator import Stepper, evolve_tdse

__all__ = [
    'Grid1D', 'WaveFunction1D', 'displaced_ground_state', 'ho_eigenstate',
    'ho_log_density', 'ho_wavefunction', 'superpose',
    'HISTORY_COLUMNS', 'TdseHistory', 'TdseSample', 'ehrenfest_residual',
    'expectation_p', 'expectation_y', 'overlap', 'overlap_probability',
    'snapshot_frame', 'Stepper', 'evolve_tdse',
]
