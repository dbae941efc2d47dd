"""Scenario configuration and JSON loading."""

import json
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .errors import ConfigError
from .frames import Family, KinematicParams
from .lindblad import initial_state
from .spectral import DipoleConfig, polarization_vector

SCHEMA_VERSION = 1

PathLike = Union[str, os.PathLike]
Polarization = Union[str, Sequence[float]]

_LAB_ALIASES = {"rho": "x", "phi": "y"}
_COMOVING_ALIASES = {"x": "rho", "y": "phi"}


def polarization_label(pol: Polarization, family: Family) -> str:
    """Axis name as used for ``family`` (``rho/phi/z`` circular, ``x/y/z`` otherwise)."""
    if not isinstance(pol, str):
        return "[" + " ".join(f"{float(np.real(c)):g}" for c in pol) + "]"
    name = pol.strip().lower()
    aliases = _COMOVING_ALIASES if family is Family.CIRCULAR else _LAB_ALIASES
    return aliases.get(name, name)


@dataclass(frozen=True)
class SweepAxis:
    """Linear grid over ``L`` or ``a``."""

    axis: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.axis not in ("L", "a"):
            raise ConfigError(f"sweep axis must be 'L' or 'a', got {self.axis!r}")
        if int(self.count) != self.count or self.count < 1:
            raise ConfigError("sweep count must be a positive integer")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)) or self.start <= 0:
            raise ConfigError("sweep bounds must be positive and finite")
        if self.count > 1 and not self.start < self.stop:
            raise ConfigError("sweep grid must be strictly increasing (start < stop)")
        object.__setattr__(self, "count", int(self.count))

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([float(self.start)])
        return np.linspace(self.start, self.stop, self.count)

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "stop": self.stop, "count": self.count}


@dataclass(frozen=True)
class ScenarioConfig:
    """One simulation scenario.

    Parameters
    ----------
    family : str
        ``circular``, ``uniform`` or ``thermal``.
    a : float
        Proper acceleration in units of the transition frequency.
    L : float
        Interatomic separation in units of the inverse frequency.
    pol1, pol2 : str or sequence of float, optional
        Dipole orientations. Names ``rho``/``phi`` and ``x``/``y`` are aliases
        of each other. Default ``z``.
    initial : str, optional
        Initial state (``S``, ``A``, ``E``, ``G``, ``BellGE``, ``Psi``).
    p : float, optional
        Weight for ``Psi``.
    temperature : float, optional
        Bath temperature for the thermal family; defaults to ``a / 2 pi``.
    tau_max : float, optional
        Horizon in units of ``1 / Gamma0``; chosen from the rates if omitted.
    dtau : float, optional
        Uniform sample spacing; otherwise a two-resolution grid is used.
    rtol, atol : float, optional
        Integrator tolerances.
    threshold : float, optional
        Concurrence level for event detection.
    images : int, optional
        Thermal image-sum truncation.
    sweep : SweepAxis, optional
        Parameter sweep replacing ``a`` or ``L``.
    out_dir : str, optional
        Output directory.
    label : str, optional
        File-name stem; derived from the parameters if omitted.
    """

    family: str
    a: float
    L: float
    pol1: Polarization = "z"
    pol2: Polarization = "z"
    initial: str = "S"
    p: Optional[float] = None
    temperature: Optional[float] = None
    tau_max: Optional[float] = None
    dtau: Optional[float] = None
    rtol: float = 1e-10
    atol: float = 1e-12
    threshold: float = 1e-6
    images: int = 200
    sweep: Optional[SweepAxis] = None
    out_dir: str = "results"
    label: Optional[str] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", Family.parse(self.family).value)
        except ValueError as exc:
            raise ConfigError(str(exc))
        for name in ("pol1", "pol2"):
            value = getattr(self, name)
            if not isinstance(value, str):
                object.__setattr__(self, name, tuple(float(c) for c in value))
        if self.tau_max is not None and not self.tau_max > 0:
            raise ConfigError("tau_max must be positive")
        if self.dtau is not None and not self.dtau > 0:
            raise ConfigError("dtau must be positive")
        if not (self.rtol > 0 and self.atol > 0):
            raise ConfigError("integrator tolerances must be positive")
        if not self.threshold > 0:
            raise ConfigError("threshold must be positive")
        try:
            if self.sweep is None:
                self.kinematics()
            else:
                for value in self.sweep.values():
                    self.at(value).kinematics()
            self.dipoles()
            initial_state(self.initial, self.p)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc))

    @property
    def family_enum(self) -> Family:
        return Family(self.family)

    def kinematics(self) -> KinematicParams:
        return KinematicParams(self.family, float(self.a), float(self.L), temperature=self.temperature)

    def dipoles(self) -> DipoleConfig:
        return DipoleConfig(polarization_vector(self.pol1), polarization_vector(self.pol2))

    def at(self, value: float) -> "ScenarioConfig":
        """The single scenario at one point of the sweep grid."""
        if self.sweep is None:
            raise ConfigError("scenario has no sweep axis")
        return replace(self, sweep=None, label=None, **{self.sweep.axis: float(value)})

    def name(self) -> str:
        if self.label:
            return self.label
        fam = self.family_enum
        pols = polarization_label(self.pol1, fam) + polarization_label(self.pol2, fam)
        initial = self.initial if self.p is None else f"{self.initial}{self.p:g}"
        stem = f"{self.family}_a{self.a:g}_L{self.L:g}_{pols}_{initial}"
        return "".join(ch if ch.isalnum() or ch in "._-" else "_" for ch in stem)

    def to_dict(self) -> Dict[str, Any]:
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "sweep"}
        for name in ("pol1", "pol2"):
            if not isinstance(out[name], str):
                out[name] = list(out[name])
        if self.sweep is not None:
            out[f"sweep_{self.sweep.axis}"] = self.sweep.to_dict()
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("a scenario must be a JSON object")
        data = dict(data)
        data.pop("schema_version", None)
        sweeps = [key for key in ("sweep_L", "sweep_a") if data.get(key) is not None]
        if len(sweeps) > 1:
            raise ConfigError("set at most one sweep axis (sweep_L or sweep_a)")
        sweep = None
        for key in ("sweep_L", "sweep_a"):
            spec = data.pop(key, None)
            if spec is None:
                continue
            if not isinstance(spec, dict) or set(spec) != {"start", "stop", "count"}:
                raise ConfigError(f"{key} needs exactly the keys start, stop, count")
            sweep = SweepAxis(key[len("sweep_"):], float(spec["start"]), float(spec["stop"]), spec["count"])
        allowed = {f.name for f in fields(cls)} - {"sweep"}
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
        missing = [key for key in ("family", "a", "L") if key not in data]
        if missing and not (sweep is not None and missing == [sweep.axis]):
            raise ConfigError(f"missing configuration keys: {', '.join(missing)}")
        if sweep is not None and sweep.axis not in data:
            data[sweep.axis] = sweep.start
        try:
            return cls(sweep=sweep, **data)
        except TypeError as exc:
            raise ConfigError(str(exc))


def load_config(path: PathLike) -> List[ScenarioConfig]:
    """Read one scenario or a ``{"scenarios": [...]}`` batch from JSON."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {os.fspath(path)!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {os.fspath(path)!r}: {exc}")
    if not isinstance(payload, dict):
        raise ConfigError("configuration root must be a JSON object")
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r}; expected {SCHEMA_VERSION}")
    if "scenarios" in payload:
        extra = set(payload) - {"schema_version", "scenarios"}
        if extra:
            raise ConfigError(f"unknown top-level keys: {', '.join(sorted(extra))}")
        items = payload["scenarios"]
        if not isinstance(items, list):
            raise ConfigError("'scenarios' must be a list")
        return [ScenarioConfig.from_dict(item) for item in items]
    return [ScenarioConfig.from_dict(payload)]


def dump_config(path: PathLike, configs: Sequence[ScenarioConfig]) -> None:
    payload = {"schema_version": SCHEMA_VERSION, "scenarios": [c.to_dict() for c in configs]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
