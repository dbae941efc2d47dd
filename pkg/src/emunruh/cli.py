"""Command-line entry point.

Examples
--------
::

    emunruh --list-presets
    emunruh --preset fig1-left --out results/fig1-left --workers 4
    emunruh --config scenarios.json
"""

import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional, Sequence

from .config import ScenarioConfig, load_config
from .errors import ConfigError, NumericalError
from .presets import get_preset, list_presets
from .runner import parallel_grid, sweep_max_concurrence

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emunruh",
        description="Entanglement dynamics of two atoms on relativistic trajectories.",
    )
    parser.add_argument("--config", help="JSON scenario file (schema_version 1)")
    parser.add_argument("--preset", action="append", default=[], help="figure preset name; may be repeated")
    parser.add_argument("--out", help="output directory; overrides out_dir of every scenario")
    parser.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")
    parser.add_argument("--list-presets", action="store_true", help="print the available presets and exit")
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging verbosity (default: INFO)",
    )
    return parser


def collect_scenarios(args: argparse.Namespace) -> List[ScenarioConfig]:
    configs: List[ScenarioConfig] = []
    if args.config:
        configs.extend(load_config(args.config))
    for name in args.preset:
        configs.extend(get_preset(name).scenarios(out_dir=args.out or f"results/{name}"))
    if not configs:
        raise ConfigError("nothing to run; pass --config or --preset")
    if args.out:
        configs = [replace(c, out_dir=args.out) for c in configs]
    return configs


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s %(name)s: %(message)s")

    if args.list_presets:
        for name, description in list_presets():
            print(f"{name:12s} {description}")
        return EXIT_OK

    try:
        if args.workers < 1:
            raise ConfigError("--workers must be at least 1")
        configs = collect_scenarios(args)
    except ConfigError as exc:
        LOGGER.error("%s", exc)
        return EXIT_CONFIG

    status = EXIT_OK
    sweeps = [c for c in configs if c.sweep is not None]
    singles = [c for c in configs if c.sweep is None]
    try:
        for config in sweeps:
            result = sweep_max_concurrence(config, workers=args.workers)
            LOGGER.info("%s window: %s", result.axis, result.window())
    except ConfigError as exc:
        LOGGER.error("%s", exc)
        return EXIT_CONFIG
    except NumericalError as exc:
        LOGGER.error("%s", exc)
        return EXIT_NUMERICAL

    by_dir = {}
    for config in singles:
        by_dir.setdefault(config.out_dir, []).append(config)
    for out_dir, group in by_dir.items():
        grid = parallel_grid(group, workers=args.workers, out_dir=out_dir)
        LOGGER.info("wrote %s (%d scenarios, %d failed)", grid.summary_path, len(grid.rows), grid.failures)
        if grid.failures:
            LOGGER.warning("failed scenarios are listed in %s", grid.failures_path)
            status = EXIT_NUMERICAL
    return status


if __name__ == "__main__":
    sys.exit(main())
