#!/usr/bin/env python3
"""
Run scatter-sim from a source checkout without installing it.

Usage:
    python run_scenario.py <scenario> [--config path/to/scenario.toml] [--output-dir DIR]

Example:
    python run_scenario.py compare -c configs/preset.toml -o output/

With no arguments the preset comparison in configs/preset.toml is run.
"""

import sys
from pathlib import Path

project_root = Path(__file__).resolve().parent
sys.path.insert(0, str(project_root))

from src.cli.main import cli  # noqa: E402

PRESET_ARGS = ["compare", "--config", str(project_root / "configs" / "preset.toml")]


def main(argv=None):
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        cli.main(args=args or PRESET_ARGS, prog_name="scatter-sim")
    except KeyboardInterrupt:
        print("\nScenario interrupted", file=sys.stderr)
        sys.exit(130)


if __name__ == "__main__":
    main()
