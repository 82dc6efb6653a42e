"""Main CLI module using Click library."""

import sys
import time
from pathlib import Path
from typing import List, Optional

import click
from colorama import init as colorama_init

from src import __version__
from src.cli.logging_config import setup_logging
from src.scenarios.runner import ScenarioResult, run_scenario
from src.utils.config import ScenarioConfig
from src.utils.error_handling import (
    ConfigurationError,
    MeasurementError,
    NumericalError,
    OutputGenerationError,
)

# Initialize colorama for cross-platform colored output
colorama_init()

__description__ = "Beam/oscillator inelastic scattering: classical, partially and fully quantum scenarios"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def scenario_options(command):
    """Options shared by every scenario subcommand."""
    options = [
        click.option(
            "--config",
            "-c",
            "config_path",
            type=click.Path(exists=True, file_okay=True, dir_okay=False, path_type=Path),
            help="Path to scenario TOML file (defaults are used when omitted)",
        ),
        click.option(
            "--output-dir",
            "-o",
            type=click.Path(file_okay=False, dir_okay=True, path_type=Path),
            help="Directory for output files (overrides output.dir)",
        ),
        click.option(
            "--seed",
            type=int,
            help="Random seed (overrides numerics.seed)",
        ),
        click.option(
            "--verbose",
            "-v",
            is_flag=True,
            help="Show detailed logs and progress bars",
        ),
        click.option(
            "--debug",
            "-d",
            is_flag=True,
            help="Show full debug output",
        ),
        click.option(
            "--log-file",
            type=click.Path(dir_okay=False, path_type=Path),
            help="Also write a debug log to this file",
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.group()
@click.version_option(__version__, prog_name="scatter-sim")
def cli():
    """
    Simulate a beam particle scattering inelastically off a harmonic oscillator.

    Each subcommand runs one scenario and writes CSV/JSON files into the
    output directory. Exit codes: 0 success, 1 configuration error,
    2 numerical failure or failed tolerance check.
    """


@cli.command()
@scenario_options
def classical(**kwargs):
    """Classical trajectories, one CSV per beam speed in sweep.v_list (or v)."""
    _run("classical", **kwargs)


@cli.command()
@scenario_options
def partial(**kwargs):
    """Driven oscillator wavefunction: P0, P1, <y> time series."""
    _run("partial", **kwargs)


@cli.command()
@scenario_options
def full(**kwargs):
    """Entangled final state amplitudes and two-branch density."""
    _run("full", **kwargs)


@cli.command()
@scenario_options
def measure(**kwargs):
    """Conditional probabilities and Monte Carlo measurement tallies."""
    _run("measure", **kwargs)


@cli.command()
@scenario_options
@click.option(
    "--v-list",
    type=str,
    help="Comma-separated beam speeds (overrides sweep.v_list)",
)
@click.option(
    "--alpha-list",
    type=str,
    help="Comma-separated couplings (overrides sweep.alpha_list)",
)
def sweep(v_list: Optional[str], alpha_list: Optional[str], **kwargs):
    """Summary row per (v, alpha) point."""
    overrides = {}
    try:
        if v_list is not None:
            overrides["sweep.v_list"] = _parse_list(v_list)
        if alpha_list is not None:
            overrides["sweep.alpha_list"] = _parse_list(alpha_list)
    except ValueError as e:
        _print_error(f"Configuration error: {e}")
        sys.exit(EXIT_CONFIG)
    _run("sweep", extra=overrides, **kwargs)


@cli.command()
@scenario_options
def compare(**kwargs):
    """Cross-approach report; exits 2 when a relative difference exceeds its tolerance."""
    _run("compare", **kwargs)


@cli.command("show-config")
@scenario_options
def show_config(config_path: Optional[Path], output_dir: Optional[Path], seed: Optional[int],
                verbose: bool, debug: bool, log_file: Optional[Path]):
    """Print the merged, validated configuration as TOML."""
    setup_logging(verbose=verbose, debug=debug, log_file=log_file)
    try:
        config = _load_config(config_path, output_dir, seed, scenario=None)
        config.validate()
    except ConfigurationError as e:
        _print_error(f"Configuration error: {e}")
        sys.exit(EXIT_CONFIG)
    click.echo(config.to_toml(), nl=False)


def _run(scenario: str,
         config_path: Optional[Path],
         output_dir: Optional[Path],
         seed: Optional[int],
         verbose: bool,
         debug: bool,
         log_file: Optional[Path],
         extra: Optional[dict] = None) -> None:
    """Load the configuration, run one scenario and exit with its status."""
    logger = setup_logging(verbose=verbose, debug=debug, log_file=log_file)
    start_time = time.time()

    try:
        config = _load_config(config_path, output_dir, seed, scenario, extra)
        logger.info(f"Running scenario {scenario} into {config.output_dir}")
        result = run_scenario(config, verbosity=1 if (verbose or debug) else 0)
    except ConfigurationError as e:
        logger.error(f"Configuration error: {e}")
        _print_error(f"Configuration error: {e}")
        sys.exit(EXIT_CONFIG)
    except OutputGenerationError as e:
        logger.error(f"Output error: {e}")
        _print_error(f"Output error: {e}")
        sys.exit(EXIT_CONFIG)
    except (NumericalError, MeasurementError) as e:
        logger.error(f"Numerical failure: {e}")
        _print_error(f"Numerical failure ({type(e).__name__}): {e}")
        sys.exit(EXIT_NUMERICAL)
    except KeyboardInterrupt:
        logger.info("Process interrupted by user")
        _print_warning("\nProcess interrupted by user")
        sys.exit(130)
    except Exception as e:
        logger.exception("Unexpected error occurred")
        _print_error(f"Unexpected error: {e}")
        sys.exit(EXIT_CONFIG)

    _display_result(result, time.time() - start_time)
    sys.exit(result.exit_code)


def _load_config(config_path: Optional[Path],
                 output_dir: Optional[Path],
                 seed: Optional[int],
                 scenario: Optional[str],
                 extra: Optional[dict] = None) -> ScenarioConfig:
    """Defaults, then the config file, then command-line overrides."""
    config = ScenarioConfig.from_file(config_path) if config_path else ScenarioConfig.from_dict({})
    if extra:
        data = config.to_dict()
        data.update(extra)
        config = ScenarioConfig.from_dict(data)
    return config.with_overrides(output_dir=output_dir, seed=seed, scenario=scenario)


def _parse_list(text: str) -> List[float]:
    values = [item.strip() for item in text.split(",") if item.strip()]
    return [float(item) for item in values]


def _print_success(message: str) -> None:
    """Print success message in green."""
    click.echo(click.style(f"✓ {message}", fg="green"))


def _print_error(message: str) -> None:
    """Print error message in red."""
    click.echo(click.style(f"✗ {message}", fg="red"), err=True)


def _print_warning(message: str) -> None:
    """Print warning message in yellow."""
    click.echo(click.style(f"⚠ {message}", fg="yellow"))


def _display_result(result: ScenarioResult, total_time: float) -> None:
    """Display the scenario outcome."""
    click.echo("\n" + "=" * 60)
    click.echo(click.style(f"SCENARIO - {result.scenario}", fg="cyan", bold=True))
    click.echo("=" * 60)

    if result.scenario == "compare":
        for row in result.summary.get("checks", []):
            icon = "✗" if row["failed"] else "✓"
            color = "red" if row["failed"] else "green"
            difference = click.style(f"{row['relative_difference']:.3e}", fg=color)
            click.echo(f"  {icon} {row['check']}: {difference} (tolerance {row['tolerance']:g})")

    click.echo(f"\n{click.style('Files:', bold=True)}")
    for path in result.files:
        click.echo(f"  • {path}")

    if result.failures:
        click.echo(f"\n{click.style('Failures:', fg='yellow', bold=True)}")
        for failure in result.failures:
            click.echo(f"  - {failure}")

    click.echo(f"\n{click.style('Status:', bold=True)} {result.status}")
    click.echo(f"{click.style('Processing Time:', bold=True)} {total_time:.1f}s")

    if result.failures:
        _print_warning(f"{len(result.failures)} check(s) failed")
    else:
        _print_success(f"Scenario {result.scenario} completed")
    click.echo("=" * 60)


if __name__ == "__main__":
    cli()
