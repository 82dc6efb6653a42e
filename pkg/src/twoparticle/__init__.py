"""
Fully quantum approach: the entangled beam/oscillator final state and its measurements.
"""

from .final_state import (
    FinalStateAmplitudes,
    branch_density_table,
    build_final_state,
    expectation_y_reduced,
    initial_energy,
    reduce_to_oscillator,
    reduced_amplitude,
    scattering_phase,
)
from .measurement import (
    MeasurementOrder,
    MeasurementOutcome,
    Observable,
    SampleTally,
    conditional_probability_curve,
    crossover_position,
    measure_beam_momentum,
    measure_oscillator_position,
    order_independence_pvalue,
    sample_joint_measurement,
)

__all__ = [
    'FinalStateAmplitudes', 'branch_density_table', 'build_final_state',
    'expectation_y_reduced', 'initial_energy', 'reduce_to_oscillator',
    'reduced_amplitude', 'scattering_phase',
    'MeasurementOrder', 'MeasurementOutcome', 'Observable', 'SampleTally',
    'conditional_probability_curve', 'crossover_position',
    'measure_beam_momentum', 'measure_oscillator_position',
    'order_independence_pvalue', 'sample_joint_measurement',
]
