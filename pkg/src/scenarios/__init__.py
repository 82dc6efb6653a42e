"""
Scenario orchestration: runs configured experiments and writes their outputs.
"""

from .runner import ScenarioResult, ScenarioRunner, run_scenario, run_sweep

__all__ = ['ScenarioResult', 'ScenarioRunner', 'run_scenario', 'run_sweep']
