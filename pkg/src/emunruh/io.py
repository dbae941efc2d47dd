"""Text exports of trajectories, events, rates and sweep summaries.

Floating-point values are printed with 12 significant digits so that a
fixed scenario always produces the same bytes.
"""

import csv
import json
import os
from typing import Any, Dict, Iterable, Mapping, Sequence, Union

import numpy as np

from .entanglement import EntanglementEvents, concurrence_x
from .lindblad import StateTrajectory
from .spectral import RateCoefficients

PathLike = Union[str, os.PathLike]

FLOAT_FMT = "%.12g"

TRAJECTORY_COLUMNS = (
    "tau",
    "rho_GG",
    "rho_EE",
    "rho_AA",
    "rho_SS",
    "re_rho_AS",
    "im_rho_AS",
    "re_rho_GE",
    "im_rho_GE",
    "concurrence",
)

SUMMARY_COLUMNS = (
    "family",
    "a",
    "L",
    "pol1",
    "pol2",
    "initial",
    "max_concurrence",
    "arg_max_tau",
    "death_time",
    "birth_time",
    "n_revivals",
    "enhanced",
)

# batch rows that failed; they also appear in the summary with empty metrics
FAILURE_COLUMNS = ("family", "a", "L", "pol1", "pol2", "initial", "status")

RATE_COLUMNS = ("A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4")


def format_value(value: Any) -> str:
    """Render one table cell; ``None`` becomes an empty field."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT % value
    return str(value)


def _round(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return float(FLOAT_FMT % value)
    if isinstance(value, Mapping):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    return value


def write_trajectory_csv(path: PathLike, trajectory: StateTrajectory) -> None:
    """Write the sampled evolution with its concurrence.

    Parameters
    ----------
    path : str or os.PathLike
        Output file path.
    trajectory : StateTrajectory
        Samples to export, one row each.
    """
    s = trajectory.states
    data = np.column_stack(
        (
            trajectory.times,
            s[:, 0].real,
            s[:, 1].real,
            s[:, 2].real,
            s[:, 3].real,
            s[:, 4].real,
            s[:, 4].imag,
            s[:, 6].real,
            s[:, 6].imag,
            concurrence_x(s),
        )
    )
    # -0 would print as "-0"
    data = data + 0.0
    np.savetxt(path, data, fmt=FLOAT_FMT, delimiter=",", header=",".join(TRAJECTORY_COLUMNS), comments="", encoding="utf-8")


def write_json(path: PathLike, payload: Mapping[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_round(dict(payload)), fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_events_json(path: PathLike, events: EntanglementEvents) -> None:
    write_json(path, events.to_dict())


def write_rows_csv(path: PathLike, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> None:
    """Write dictionaries as CSV rows in ``columns`` order."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(name)) for name in columns])


def write_summary_csv(path: PathLike, rows: Iterable[Mapping[str, Any]]) -> None:
    write_rows_csv(path, SUMMARY_COLUMNS, rows)


def write_failures_csv(path: PathLike, rows: Iterable[Mapping[str, Any]]) -> None:
    write_rows_csv(path, FAILURE_COLUMNS, rows)


def write_rates_csv(path: PathLike, rates: RateCoefficients) -> None:
    """Dump the eight coefficients as a one-row table."""
    write_rows_csv(path, RATE_COLUMNS, [dict(zip(RATE_COLUMNS, rates.as_array().tolist()))])


def write_sweep_csv(path: PathLike, axis: str, rows: Iterable[Mapping[str, Any]]) -> None:
    write_rows_csv(path, (axis, "max_concurrence", "arg_max_tau", "entangled"), rows)


def write_window_json(path: PathLike, window: Dict[str, Any]) -> None:
    write_json(path, window)
