"""
Config Parser for loading scenario settings from TOML files.

Scenario files are flat: physics constants sit at the top level and the
remaining settings live in [window], [numerics], [sweep], [tolerances] and
[output] tables (or the equivalent dotted keys). Everything is flattened
to dotted keys such as "numerics.dt" before it reaches ScenarioConfig.
"""

from pathlib import Path
from typing import Any, Dict, Iterable, Union
import logging

import toml

from src.utils.error_handling import ConfigurationError, UnknownConfigKeyError

logger = logging.getLogger(__name__)


class ConfigParser:
    """
    Parser for scenario configuration files.

    Loads the TOML document, flattens nested tables and exposes the result
    as `values`.
    """

    def __init__(self, config_path: Union[str, Path]):
        """
        Initialize the parser with a config file path.

        Args:
            config_path: Path to the TOML file

        Raises:
            ConfigurationError: If the file doesn't exist or can't be parsed
        """
        self.config_path = Path(config_path)
        self.values: Dict[str, Any] = {}

        if not self.config_path.exists():
            raise ConfigurationError(f"Config file not found: {config_path}")

        self._load_config()

    def _load_config(self) -> None:
        """
        Load and flatten the TOML document.

        Raises:
            ConfigurationError: If the TOML is malformed
        """
        try:
            document = toml.load(self.config_path)
        except toml.TomlDecodeError as e:
            raise ConfigurationError(f"Error parsing config file {self.config_path}: {e}")
        except UnicodeDecodeError as e:
            raise ConfigurationError(f"Error reading config file encoding: {e}")
        except OSError as e:
            raise ConfigurationError(f"Error reading config file: {e}")

        self.values = flatten(document)
        logger.info(f"Loaded {len(self.values)} config keys from {self.config_path}")


def flatten(document: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """
    Flatten nested tables into dotted keys.

    Args:
        document: Parsed TOML document
        prefix: Key prefix for recursion

    Returns:
        Mapping of dotted keys to leaf values
    """
    flat: Dict[str, Any] = {}
    for key, value in document.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def unflatten(values: Dict[str, Any]) -> Dict[str, Any]:
    """Inverse of flatten; key order is preserved."""
    document: Dict[str, Any] = {}
    for dotted, value in values.items():
        *sections, leaf = dotted.split(".")
        table = document
        for section in sections:
            table = table.setdefault(section, {})
        table[leaf] = value
    return document


def check_known_keys(values: Dict[str, Any], known: Iterable[str]) -> None:
    """
    Reject keys that are not recognised.

    Raises:
        UnknownConfigKeyError: For the first unknown key in sorted order
    """
    known = set(known)
    unknown = sorted(set(values) - known)
    if unknown:
        raise UnknownConfigKeyError(unknown[0])


def dumps(values: Dict[str, Any]) -> str:
    """
    Serialize dotted keys to TOML.

    Top-level scalars come first, followed by one table per section.
    """
    return toml.dumps(unflatten(values))
