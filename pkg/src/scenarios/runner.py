"""
Scenario Runner - Integration layer that coordinates the physics modules.

This module provides the ScenarioRunner class that executes one named
scenario (classical, partial, full, measure, sweep, compare) from a
validated ScenarioConfig and writes its output files through ResultWriter.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.classical import (
    ClassicalTrajectory,
    classical_amplitude_analytic,
    default_initial_state,
    default_time_window,
    fit_amplitude,
    integrate_classical,
    oscillation_amplitude,
    work_on_beam_analytic,
    work_on_beam_numeric,
)
from src.model import ModelParams, WindowFunction
from src.output import ResultWriter
from src.perturbation import p1_full, p1_partial
from src.tdse import (
    Grid1D,
    TdseHistory,
    WaveFunction1D,
    ehrenfest_residual,
    evolve_tdse,
    ho_eigenstate,
    overlap_probability,
    snapshot_frame,
)
from src.twoparticle import (
    MeasurementOrder,
    branch_density_table,
    build_final_state,
    conditional_probability_curve,
    crossover_position,
    expectation_y_reduced,
    measure_beam_momentum,
    order_independence_pvalue,
    reduced_amplitude,
    sample_joint_measurement,
)
from src.twoparticle.final_state import default_y_values
from src.utils.config import ScenarioConfig
from src.utils.error_handling import ChannelClosedError, ScatterSimError

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "index", "v", "alpha", "y_m_analytic", "y_m_numeric",
    "p1_partial", "p1_full", "status", "message",
]

REPORT_COLUMNS = ["check", "value", "reference", "relative_difference", "tolerance", "failed"]

NORMALIZATION_NOTE = (
    "two-branch state renormalized: c0 = 1/sqrt(1+P1), c1 = d1 sqrt(P1)/sqrt(1+P1)"
)


@dataclass
class ScenarioResult:
    """Outcome of one scenario run."""
    scenario: str
    status: str = "Unknown"
    files: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    processing_time: float = 0.0

    @property
    def exit_code(self) -> int:
        """0 on success, 2 when a tolerance check or sweep point failed."""
        return 2 if self.failures else 0


@dataclass
class ClassicalRun:
    """Integrated passage with its fitted and closed-form amplitudes."""
    params: ModelParams
    trajectory: ClassicalTrajectory
    y_m_numeric: float
    y_m_analytic: float

    def summary(self, f: WindowFunction) -> Dict[str, Any]:
        work_numeric = work_on_beam_numeric(self.trajectory, self.params, f)
        work_analytic = work_on_beam_analytic(self.params, f)
        return {
            "v": self.params.v,
            "alpha": self.params.alpha,
            "y_m_numeric": self.y_m_numeric,
            "y_m_analytic": self.y_m_analytic,
            "relative_difference": _relative_difference(self.y_m_numeric, self.y_m_analytic),
            "energy_drift": self.trajectory.energy_drift(self.params.m),
            "work_on_beam_numeric": work_numeric,
            "work_on_beam_analytic": work_analytic,
        }


@dataclass
class TdseRun:
    """Wavefunction evolution with its recorded history."""
    final: WaveFunction1D
    history: TdseHistory
    p0: float
    p1: float
    y_amplitude: float


class ScenarioRunner:
    """
    Runs scenarios from a ScenarioConfig.

    Each scenario method returns a ScenarioResult; numerical failures are
    raised as ScatterSimError subclasses for the CLI to map to exit codes.
    """

    def __init__(self, config: ScenarioConfig, verbosity: int = 0):
        """
        Initialize the runner.

        Args:
            config: Validated configuration
            verbosity: 0 = quiet, 1 = progress bars
        """
        self.config = config
        self.params = config.params
        self.window = config.build_window()
        self.verbosity = verbosity
        self.writer = ResultWriter(config.output_dir)

        self.stats = {
            'scenarios_run': 0,
            'points_failed': 0,
            'total_processing_time': 0.0,
        }

        logger.info(f"Initialized ScenarioRunner for scenario: {config.scenario}")

    def run(self) -> ScenarioResult:
        """Run the configured scenario."""
        handlers: Dict[str, Callable[[], ScenarioResult]] = {
            "classical": self.run_classical,
            "partial": self.run_partial,
            "full": self.run_full,
            "measure": self.run_measure,
            "sweep": self.run_sweep,
            "compare": self.run_compare,
        }
        start_time = time.time()
        logger.info(f"Starting scenario: {self.config.scenario}")

        result = handlers[self.config.scenario]()

        result.files = list(self.writer.written)
        result.processing_time = time.time() - start_time
        if not result.failures:
            result.status = "Completed"
        else:
            result.status = "Completed with Failures"

        self.stats['scenarios_run'] += 1
        self.stats['total_processing_time'] += result.processing_time
        logger.info(
            f"Scenario {result.scenario} finished in {result.processing_time:.1f}s "
            f"({len(result.files)} files, {len(result.failures)} failures)"
        )
        return result

    # Shared computations

    def classical_run(self, params: ModelParams) -> ClassicalRun:
        """Integrate one passage and fit the post-passage amplitude."""
        numerics = self.config.numerics
        t0, t_end = default_time_window(params, self.window, numerics.t_span, numerics.fit_periods)
        initial = default_initial_state(params, self.window, t0)
        trajectory = integrate_classical(params, self.window, initial, numerics.dt, t_end)
        return ClassicalRun(
            params=params,
            trajectory=trajectory,
            y_m_numeric=fit_amplitude(trajectory, params, numerics.fit_periods),
            y_m_analytic=classical_amplitude_analytic(params, self.window),
        )

    def tdse_run(self, params: ModelParams) -> TdseRun:
        """Evolve the oscillator ground state through one passage."""
        numerics = self.config.numerics
        grid = Grid1D.default_for(params, numerics.grid_half_width, numerics.grid_points)
        t0, t_end = default_time_window(params, self.window, numerics.t_span, numerics.fit_periods)
        history = TdseHistory()
        final = evolve_tdse(
            ho_eigenstate(0, params, grid, t=t0),
            params,
            self.window,
            t_end,
            numerics.dt,
            observer=history,
            stepper=numerics.stepper,
            observer_stride=numerics.stride,
            momentum_method=numerics.momentum_method,
        )
        y_amplitude = oscillation_amplitude(
            history.t, history.y_expect, params.omega0, numerics.fit_periods,
        )
        return TdseRun(
            final=final,
            history=history,
            p0=overlap_probability(final, 0, params),
            p1=overlap_probability(final, 1, params),
            y_amplitude=y_amplitude,
        )

    # Scenarios

    def run_classical(self) -> ScenarioResult:
        """One trajectory CSV per beam speed plus a summary table."""
        speeds = self.config.v_list or [self.params.v]
        rows = []
        for v in self._progress(speeds, "Classical passages"):
            run = self.classical_run(self.params.with_(v=v))
            self.writer.write_csv(f"classical_v{v:g}.csv", run.trajectory.to_frame(self.config.numerics.stride))
            rows.append(run.summary(self.window))

        frame = pd.DataFrame(rows)
        self.writer.write_csv("classical_summary.csv", frame)
        return ScenarioResult(scenario="classical", summary={"runs": rows})

    def run_partial(self) -> ScenarioResult:
        """P0/P1/<y> time series of the driven oscillator."""
        params = self.params
        run = self.tdse_run(params)
        analytic = p1_partial(params, self.window, self.config.tolerances.validity)
        y_m = classical_amplitude_analytic(params, self.window)

        self.writer.write_csv("partial_timeseries.csv", run.history.to_frame())
        self.writer.write_csv("partial_snapshot.csv", snapshot_frame(run.final))

        summary = {
            "v": params.v,
            "alpha": params.alpha,
            "stepper": self.config.numerics.stepper,
            "momentum_method": self.config.numerics.momentum_method,
            "p0_tdse": run.p0,
            "p1_tdse": run.p1,
            "p0_plus_p1": run.p0 + run.p1,
            "norm_final": run.final.norm(),
            "p1_partial": analytic.p1,
            "p1_relative_difference": _relative_difference(run.p1, analytic.p1),
            "y_amplitude_tdse": run.y_amplitude,
            "y_m_analytic": y_m,
            "y_amplitude_relative_difference": _relative_difference(run.y_amplitude, y_m),
            "ehrenfest_residual": _safe_ehrenfest(run.history, params, self.window),
            "warnings": analytic.warnings,
        }
        self.writer.write_json("partial_summary.json", summary)
        return ScenarioResult(scenario="partial", summary=summary)

    def run_full(self) -> ScenarioResult:
        """Final-state amplitudes and the two-branch density table."""
        params = self.params
        numerics = self.config.numerics
        state = build_final_state(params, self.window, params.k0, validity_threshold=self.config.tolerances.validity)
        transition = p1_full(params, self.window, params.k0, self.config.tolerances.validity)

        y_values = default_y_values(params, numerics.y_prime_max, numerics.y_prime_points)
        self.writer.write_csv("full_branch_density.csv", branch_density_table(state, params, y_values))

        times = np.linspace(0.0, 2.0 * 2.0 * math.pi / params.omega0, 201)
        self.writer.write_csv("full_reduced_oscillation.csv", pd.DataFrame({
            "t": times,
            "y_expect": expectation_y_reduced(state, times, params),
        }))

        summary = {
            "state": state.to_record(),
            "transition": transition.to_record(),
            "reduced_amplitude": reduced_amplitude(state, params),
            "y_m_analytic": classical_amplitude_analytic(params, self.window),
            "normalization": NORMALIZATION_NOTE,
        }
        self.writer.write_json("full_state.json", summary)
        return ScenarioResult(scenario="full", summary=summary)

    def run_measure(self) -> ScenarioResult:
        """Conditional-probability curves and Monte Carlo tallies for both measurement orders."""
        params = self.params
        numerics = self.config.numerics
        state = build_final_state(params, self.window, params.k0, validity_threshold=self.config.tolerances.validity)

        y_values = default_y_values(params, numerics.y_prime_max, numerics.y_prime_points)
        self.writer.write_csv("measure_conditional.csv", conditional_probability_curve(state, params, y_values))

        y_star = crossover_position(state, params)
        if math.isfinite(y_star):
            wide = np.linspace(-2.0 * y_star, 2.0 * y_star, numerics.y_prime_points)
            self.writer.write_csv("measure_conditional_wide.csv", conditional_probability_curve(state, params, wide))

        tallies = {}
        for offset, order in enumerate(MeasurementOrder):
            tally = sample_joint_measurement(state, numerics.seed + offset, order, numerics.n_samples, params)
            self.writer.write_csv(f"measure_samples_{order.value}.csv", tally.to_frame())
            tallies[order] = tally

        p_k0, p_k1 = state.weights
        n = numerics.n_samples
        binomial_sigma = math.sqrt(n * p_k1 * p_k0)
        summary = {
            "state": state.to_record(),
            "crossover_position": y_star,
            "beam_outcomes": {
                "k0": measure_beam_momentum(state, state.k0).to_record(),
                "k1": measure_beam_momentum(state, state.k1).to_record(),
            },
            "samples": {order.value: tally.summary() for order, tally in tallies.items()},
            "binomial_sigma": binomial_sigma,
            "order_independence_pvalue": order_independence_pvalue(
                tallies[MeasurementOrder.BEAM_FIRST], tallies[MeasurementOrder.OSCILLATOR_FIRST],
            ),
            "normalization": NORMALIZATION_NOTE,
        }
        self.writer.write_json("measure_summary.json", summary)
        return ScenarioResult(scenario="measure", summary=summary)

    def run_sweep(self) -> ScenarioResult:
        """
        One summary row per parameter point.

        Points run in a process pool when numerics.workers > 1; rows keep the
        input order and a failing point is recorded without stopping the sweep.
        """
        points = self.config.sweep_points()
        tasks = [(index, point, self.config) for index, point in enumerate(points)]
        logger.info(f"Starting sweep of {len(points)} points with {self.config.numerics.workers} workers")

        if self.config.numerics.workers > 1:
            with ProcessPoolExecutor(max_workers=self.config.numerics.workers) as pool:
                rows = list(self._progress(pool.map(_sweep_point, tasks), "Sweep", total=len(tasks)))
        else:
            rows = [_sweep_point(task) for task in self._progress(tasks, "Sweep")]

        failures = [f"point {row['index']}: {row['message']}" for row in rows if row["status"] == "failed"]
        for failure in failures:
            logger.warning(f"Sweep {failure}")
        self.stats['points_failed'] += len(failures)

        frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
        self.writer.write_csv("sweep_summary.csv", frame)
        if self.config.excel:
            self.writer.write_workbook(
                "sweep_summary.xlsx",
                {"Sweep": frame.assign(failed=frame["status"] == "failed")},
                failed_column="failed",
            )
        return ScenarioResult(scenario="sweep", summary={"rows": rows}, failures=failures)

    def run_compare(self) -> ScenarioResult:
        """Cross-approach report: classical, TDSE and both perturbative probabilities."""
        params = self.params
        tolerances = self.config.tolerances

        classical = self.classical_run(params)
        tdse = self.tdse_run(params)
        partial = p1_partial(params, self.window, tolerances.validity)
        full = p1_full(params, self.window, params.k0, tolerances.validity)

        checks = [
            ("y_m_numeric_vs_analytic", classical.y_m_numeric, classical.y_m_analytic, tolerances.amplitude),
            ("y_amplitude_tdse_vs_numeric", tdse.y_amplitude, classical.y_m_numeric, tolerances.amplitude_tdse),
            ("p1_tdse_vs_partial", tdse.p1, partial.p1, tolerances.p1_tdse),
            ("p1_tdse_vs_full", tdse.p1, full.p1, tolerances.p1_tdse),
            ("p1_full_vs_partial", full.p1, partial.p1, tolerances.p1_full),
        ]
        rows = []
        failures = []
        for name, value, reference, tolerance in checks:
            difference = _relative_difference(value, reference)
            failed = not (difference <= tolerance)
            rows.append({
                "check": name,
                "value": value,
                "reference": reference,
                "relative_difference": difference,
                "tolerance": tolerance,
                "failed": failed,
            })
            if failed:
                failures.append(f"{name}: relative difference {difference:.4g} exceeds {tolerance:g}")

        frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)
        self.writer.write_csv("compare_report.csv", frame)
        summary = {
            "v": params.v,
            "alpha": params.alpha,
            "y_m_numeric": classical.y_m_numeric,
            "y_m_analytic": classical.y_m_analytic,
            "y_amplitude_tdse": tdse.y_amplitude,
            "p1_tdse": tdse.p1,
            "p1_partial": partial.p1,
            "p1_full": full.p1,
            "checks": rows,
            "passed": not failures,
        }
        self.writer.write_json("compare_report.json", summary)
        if self.config.excel:
            self.writer.write_workbook("compare_report.xlsx", {"Compare": frame}, failed_column="failed")

        for failure in failures:
            logger.warning(f"Tolerance check failed: {failure}")
        return ScenarioResult(scenario="compare", summary=summary, failures=failures)

    def get_statistics(self) -> Dict[str, Any]:
        """
        Get processing statistics.

        Returns:
            Dictionary with processing statistics
        """
        return {
            'scenarios_run': self.stats['scenarios_run'],
            'points_failed': self.stats['points_failed'],
            'files_written': len(self.writer.written),
            'total_processing_time': self.stats['total_processing_time'],
        }

    def _progress(self, iterable, label: str, total: Optional[int] = None):
        if self.verbosity < 1:
            return iterable
        return tqdm(iterable, desc=label, total=total, unit="point")


def run_scenario(config: ScenarioConfig, verbosity: int = 0) -> ScenarioResult:
    """
    Validate a configuration and run its scenario.

    Args:
        config: Scenario configuration
        verbosity: 0 = quiet, 1 = progress bars

    Returns:
        ScenarioResult

    Raises:
        ConfigurationError: If the configuration is invalid
        NumericalError: If a computation fails
    """
    config.validate()
    return ScenarioRunner(config, verbosity=verbosity).run()


def run_sweep(config: ScenarioConfig, verbosity: int = 0) -> ScenarioResult:
    """Run the sweep scenario regardless of config.scenario."""
    return run_scenario(config.with_overrides(scenario="sweep"), verbosity)


def _sweep_point(task: Tuple[int, ModelParams, ScenarioConfig]) -> Dict[str, Any]:
    """Compute one sweep row; module level so a process pool can pickle it."""
    index, params, config = task
    row: Dict[str, Any] = {
        "index": index,
        "v": params.v,
        "alpha": params.alpha,
        "y_m_analytic": math.nan,
        "y_m_numeric": math.nan,
        "p1_partial": math.nan,
        "p1_full": math.nan,
        "status": "ok",
        "message": "",
    }
    try:
        f = config.build_window()
        numerics = config.numerics

        row["y_m_analytic"] = classical_amplitude_analytic(params, f)
        t0, t_end = default_time_window(params, f, numerics.t_span, numerics.fit_periods)
        trajectory = integrate_classical(params, f, default_initial_state(params, f, t0), numerics.dt, t_end)
        row["y_m_numeric"] = fit_amplitude(trajectory, params, numerics.fit_periods)
        row["p1_partial"] = p1_partial(params, f, config.tolerances.validity).p1
        try:
            row["p1_full"] = p1_full(params, f, params.k0, config.tolerances.validity).p1
        except ChannelClosedError as e:
            row["message"] = str(e)
    except ScatterSimError as e:
        row["status"] = "failed"
        row["message"] = str(e)
    return row


def _relative_difference(value: float, reference: float) -> float:
    if reference == 0:
        return 0.0 if value == 0 else math.inf
    return abs(value - reference) / abs(reference)


def _safe_ehrenfest(history: TdseHistory, params: ModelParams, f: WindowFunction) -> Optional[float]:
    try:
        return ehrenfest_residual(history, params, f)
    except ScatterSimError as e:
        logger.debug(f"Ehrenfest residual not available: {e}")
        return None
