"""Scenario execution, parameter sweeps and batch runs.

A scenario goes through the full pipeline: correlator, rate coefficients,
evolution, refinement of concurrence minima and event detection. Batches run
scenarios in worker processes; only the calling process writes files.
"""

import concurrent.futures
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

import numpy as np

from .config import ScenarioConfig, polarization_label
from .entanglement import EntanglementEvents, detect_events, refine_minima
from .errors import ConfigError, EmunruhError, NumericalError
from .io import (
    write_events_json,
    write_failures_csv,
    write_rates_csv,
    write_summary_csv,
    write_sweep_csv,
    write_trajectory_csv,
    write_window_json,
)
from .lindblad import StateTrajectory, default_tau_max, evolve, initial_state, sample_grid
from .spectral import RateCoefficients, rates_for
from .wightman import correlator_for

LOGGER = logging.getLogger(__name__)

WINDOW_THRESHOLD = 1e-4

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class ScenarioResult:
    """Outcome of one scenario."""

    config: ScenarioConfig
    rates: RateCoefficients
    trajectory: StateTrajectory
    events: EntanglementEvents
    files: List[str] = field(default_factory=list)

    def summary_row(self) -> Dict[str, Any]:
        return summary_row(self.config, self.events)


def summary_row(config: ScenarioConfig, events: Optional[EntanglementEvents] = None, status: str = "ok") -> Dict[str, Any]:
    fam = config.family_enum
    initial = config.initial if config.p is None else f"{config.initial}({config.p:g})"
    row = {
        "family": config.family,
        "a": float(config.a),
        "L": float(config.L),
        "pol1": polarization_label(config.pol1, fam),
        "pol2": polarization_label(config.pol2, fam),
        "initial": initial,
        "status": status,
    }
    if events is not None:
        row.update(
            max_concurrence=events.max_concurrence,
            arg_max_tau=events.arg_max_tau,
            death_time=events.death_time,
            birth_time=events.birth_time,
            n_revivals=events.n_revivals,
            enhanced=events.enhanced,
        )
    return row


def _row_key(row: Dict[str, Any]):
    return (row["family"], row["a"], row["L"], row["pol1"], row["pol2"], row["initial"])


def _attach_echo(exc: EmunruhError, config: ScenarioConfig) -> EmunruhError:
    if exc.config_echo is None:
        exc.config_echo = config.to_dict()
    return exc


def scenario_rates(config: ScenarioConfig) -> RateCoefficients:
    """Rate coefficients of a single (non-sweep) scenario."""
    correlator = correlator_for(config.kinematics(), images=config.images)
    return rates_for(correlator, config.dipoles())


def _compute(config: ScenarioConfig) -> ScenarioResult:
    rates = scenario_rates(config)
    LOGGER.debug("%s: rates %s", config.name(), rates)
    rho0 = initial_state(config.initial, config.p)
    tau_max = config.tau_max if config.tau_max is not None else default_tau_max(rates)
    times = sample_grid(tau_max, rates, dtau=config.dtau)
    trajectory = evolve(rho0, rates, times=times, rtol=config.rtol, atol=config.atol)
    trajectory = refine_minima(trajectory, rates, config.threshold)
    events = detect_events(trajectory, config.threshold)
    return ScenarioResult(config, rates, trajectory, events)


def write_scenario(result: ScenarioResult, out_dir: str) -> List[str]:
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.join(out_dir, result.config.name())
    paths = [f"{stem}.csv", f"{stem}.events.json", f"{stem}.rates.csv"]
    write_trajectory_csv(paths[0], result.trajectory)
    write_events_json(paths[1], result.events)
    write_rates_csv(paths[2], result.rates)
    result.files = paths
    return paths


def run_scenario(config: ScenarioConfig, out_dir: Optional[str] = None, write: bool = True) -> ScenarioResult:
    """Run one scenario and optionally write its files.

    Parameters
    ----------
    config : ScenarioConfig
        Scenario without a sweep axis.
    out_dir : str, optional
        Overrides ``config.out_dir``.
    write : bool, optional
        Write ``<name>.csv``, ``<name>.events.json`` and ``<name>.rates.csv``.

    Raises
    ------
    EmunruhError
        Any failure of the pipeline, with ``config_echo`` set.
    """
    if config.sweep is not None:
        raise _attach_echo(ConfigError("scenario has a sweep axis; use sweep_max_concurrence"), config)
    LOGGER.info("running %s", config.name())
    try:
        result = _compute(config)
    except EmunruhError as exc:
        raise _attach_echo(exc, config)
    except (np.linalg.LinAlgError, FloatingPointError) as exc:
        raise _attach_echo(NumericalError(f"{type(exc).__name__}: {exc}"), config) from exc
    if write:
        write_scenario(result, out_dir or config.out_dir)
    return result


def _run_quiet(config: ScenarioConfig) -> ScenarioResult:
    return run_scenario(config, write=False)


def _guarded(config: ScenarioConfig):
    try:
        return run_scenario(config, write=False)
    except Exception as exc:  # recorded per row by parallel_grid
        return exc


def pool_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """Order-preserving map, in worker processes when ``workers > 1``."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if workers == 1 or len(items) <= 1:
        return [func(item) for item in items]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=1))


@dataclass
class SweepResult:
    """Maximum concurrence along a sweep axis."""

    config: ScenarioConfig
    axis: str
    values: np.ndarray
    max_concurrence: np.ndarray
    arg_max_tau: np.ndarray
    threshold: float = WINDOW_THRESHOLD
    files: List[str] = field(default_factory=list)

    @property
    def entangled(self) -> np.ndarray:
        return self.max_concurrence > self.threshold

    def window(self) -> Dict[str, Any]:
        """First and last axis values with maximum concurrence above threshold."""
        hits = np.flatnonzero(self.entangled)
        return {
            "axis": self.axis,
            "start": float(self.values[hits[0]]) if hits.size else None,
            "end": float(self.values[hits[-1]]) if hits.size else None,
            "threshold": self.threshold,
        }

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {self.axis: float(v), "max_concurrence": float(c), "arg_max_tau": float(t), "entangled": bool(e)}
            for v, c, t, e in zip(self.values, self.max_concurrence, self.arg_max_tau, self.entangled)
        ]

    def stem(self) -> str:
        base = self.config.at(self.values[0])
        fam = base.family_enum
        pols = polarization_label(base.pol1, fam) + polarization_label(base.pol2, fam)
        other = f"L{base.L:g}" if self.axis == "a" else f"a{base.a:g}"
        return self.config.label or f"{base.family}_{other}_{pols}_{base.initial}_sweep_{self.axis}"


def sweep_max_concurrence(
    config: ScenarioConfig,
    workers: int = 1,
    out_dir: Optional[str] = None,
    write: bool = True,
    threshold: float = WINDOW_THRESHOLD,
) -> SweepResult:
    """Maximum concurrence at every point of the sweep grid.

    Writes ``<stem>.sweep.csv`` and ``<stem>.window.json`` when ``write`` is
    set.
    """
    if config.sweep is None:
        raise _attach_echo(ConfigError("scenario has no sweep axis"), config)
    values = config.sweep.values()
    if values.size == 0:
        raise _attach_echo(ConfigError("sweep grid is empty"), config)
    points = [config.at(v) for v in values]
    LOGGER.info("sweeping %s over %d points", config.sweep.axis, len(points))
    results = pool_map(_run_quiet, points, workers)
    sweep = SweepResult(
        config=config,
        axis=config.sweep.axis,
        values=values,
        max_concurrence=np.array([r.events.max_concurrence for r in results]),
        arg_max_tau=np.array([r.events.arg_max_tau for r in results]),
        threshold=threshold,
    )
    if write:
        target = out_dir or config.out_dir
        os.makedirs(target, exist_ok=True)
        stem = os.path.join(target, sweep.stem())
        sweep.files = [f"{stem}.sweep.csv", f"{stem}.window.json"]
        write_sweep_csv(sweep.files[0], sweep.axis, sweep.rows())
        write_window_json(sweep.files[1], sweep.window())
    return sweep


@dataclass
class GridResult:
    """Aggregated outcome of a batch."""

    rows: List[Dict[str, Any]]
    results: List[ScenarioResult]
    summary_path: Optional[str] = None
    failures_path: Optional[str] = None

    @property
    def failed_rows(self) -> List[Dict[str, Any]]:
        return [row for row in self.rows if row["status"] != "ok"]

    @property
    def failures(self) -> int:
        return len(self.failed_rows)


def expand(configs: Iterable[ScenarioConfig]) -> List[ScenarioConfig]:
    """Replace sweep scenarios by their grid points."""
    out = []
    for config in configs:
        if config.sweep is None:
            out.append(config)
        else:
            out.extend(config.at(v) for v in config.sweep.values())
    return out


def parallel_grid(
    configs: Iterable[ScenarioConfig],
    workers: int = 1,
    out_dir: Optional[str] = None,
    write_trajectories: bool = True,
) -> GridResult:
    """Run independent scenarios and aggregate them into ``summary.csv``.

    Failures do not stop the batch. A failed scenario keeps its identity
    columns in the summary with empty metrics, and its error goes to
    ``failures.csv``, which is only written when something failed. Rows are
    sorted, so the outputs do not depend on ``workers``.
    """
    points = expand(configs)
    outcomes = pool_map(_guarded, points, workers)
    rows = []
    results = []
    for config, outcome in zip(points, outcomes):
        if isinstance(outcome, ScenarioResult):
            results.append(outcome)
            rows.append(outcome.summary_row())
        else:
            LOGGER.warning("%s failed: %s", config.name(), outcome)
            rows.append(summary_row(config, status=f"error: {type(outcome).__name__}: {outcome.args[0] if outcome.args else outcome}"))
    rows.sort(key=_row_key)
    grid = GridResult(rows=rows, results=results)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        if write_trajectories:
            for result in results:
                write_scenario(result, out_dir)
        grid.summary_path = os.path.join(out_dir, "summary.csv")
        write_summary_csv(grid.summary_path, rows)
        if grid.failures:
            grid.failures_path = os.path.join(out_dir, "failures.csv")
            write_failures_csv(grid.failures_path, grid.failed_rows)
    return grid
