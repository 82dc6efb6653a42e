"""Logging configuration for the scattering simulator."""

import logging
import sys
from pathlib import Path
from typing import List, Optional

ROOT_LOGGER = "scatter_sim"

# Library modules log under their package name
PACKAGE_LOGGER = "src"

BRIEF_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
BRIEF_DATEFMT = "%H:%M:%S"
DETAILED_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s"
DETAILED_DATEFMT = "%Y-%m-%d %H:%M:%S"


def console_level(verbose: bool = False, debug: bool = False) -> int:
    """Map the CLI flags to a console level; --debug wins over --verbose."""
    if debug:
        return logging.DEBUG
    if verbose:
        return logging.INFO
    return logging.WARNING


def setup_logging(
    verbose: bool = False,
    debug: bool = False,
    log_file: Optional[Path] = None
) -> logging.Logger:
    """
    Attach console (and optionally file) handlers to the CLI and package loggers.

    Solver modules log under ``src.*`` while the CLI logs under
    ``scatter_sim.*``; both share the same handlers. Python warnings
    (quadrature accuracy, overflow) are routed into logging as well.

    Args:
        verbose: Show INFO level logs
        debug: Show DEBUG level logs (overrides verbose)
        log_file: Optional path to a log file that always receives DEBUG

    Returns:
        The CLI logger
    """
    level = console_level(verbose, debug)

    console = logging.StreamHandler(sys.stdout)
    console.setLevel(level)
    if debug:
        console.setFormatter(logging.Formatter(DETAILED_FORMAT, datefmt=DETAILED_DATEFMT))
    else:
        console.setFormatter(logging.Formatter(BRIEF_FORMAT, datefmt=BRIEF_DATEFMT))

    handlers: List[logging.Handler] = [console]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(DETAILED_FORMAT, datefmt=DETAILED_DATEFMT))
        handlers.append(file_handler)

    for name in (ROOT_LOGGER, PACKAGE_LOGGER):
        target = logging.getLogger(name)
        target.setLevel(logging.DEBUG if log_file else level)
        target.handlers.clear()
        for handler in handlers:
            target.addHandler(handler)

    logging.captureWarnings(True)
    warnings_logger = logging.getLogger("py.warnings")
    warnings_logger.handlers.clear()
    for handler in handlers:
        warnings_logger.addHandler(handler)

    logger = logging.getLogger(ROOT_LOGGER)
    logger.debug(f"Console level {logging.getLevelName(level)}, log file: {log_file or 'none'}")
    return logger


def get_logger(name: str) -> logging.Logger:
    """Child of the CLI logger, e.g. ``get_logger("runner")`` -> ``scatter_sim.runner``."""
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
