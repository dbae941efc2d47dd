"""Concurrence of X states and detection of entanglement events."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidStateError
from .lindblad import StateTrajectory, XState, propagate
from .spectral import RateCoefficients

LOGGER = logging.getLogger(__name__)

RADICAND_TOL = 1e-12
SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def _root(radicand: np.ndarray) -> np.ndarray:
    radicand = np.asarray(radicand).real
    if np.any(radicand < -RADICAND_TOL):
        raise InvalidStateError(f"negative radicand {radicand.min():.3g} in concurrence")
    return np.sqrt(np.clip(radicand, 0.0, None))


def concurrence_witness(state: Union[XState, np.ndarray]) -> np.ndarray:
    """``max(K1, K2)`` without clipping at zero.

    Negative values measure how far a separable state is from the
    entanglement boundary.
    """
    vec = state.to_vector() if isinstance(state, XState) else np.asarray(state, dtype=complex)
    gg, ee, aa, ss, as_, sa, ge, _eg = np.moveaxis(vec, -1, 0)
    k1 = _root((aa - ss) ** 2 - (as_ - sa) ** 2) - 2.0 * _root(gg * ee)
    k2 = 2.0 * np.abs(ge) - _root((aa + ss) ** 2 - (as_ + sa) ** 2)
    return np.maximum(k1, k2)


def concurrence_x(state: Union[XState, np.ndarray]):
    """Concurrence ``max(0, K1, K2)`` of one X state or an ``(..., 8)`` array."""
    value = np.clip(concurrence_witness(state), 0.0, 1.0)
    return float(value) if np.ndim(value) == 0 else value


def concurrence_wootters(rho: np.ndarray) -> float:
    """Concurrence of a general two-qubit density matrix.

    Uses the singular values of ``sqrt(rho) (sy x sy) sqrt(rho)^*``, which are
    the square roots of the eigenvalues of ``rho rho~``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("a two-qubit density matrix is 4x4")
    herm = 0.5 * (rho + rho.conj().T)
    evals, evecs = np.linalg.eigh(herm)
    if evals.min() < -1e-9:
        raise InvalidStateError(f"density matrix has a negative eigenvalue {evals.min():.3g}")
    root = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    lam = np.linalg.svd(root @ SIGMA_YY @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


@dataclass
class EntanglementEvents:
    """Observables extracted from a concurrence time series."""

    death_time: Optional[float] = None
    birth_time: Optional[float] = None
    revival_intervals: List[Tuple[float, float]] = field(default_factory=list)
    max_concurrence: float = 0.0
    arg_max_tau: float = 0.0
    enhanced: bool = False
    initial_concurrence: float = 0.0

    @property
    def n_revivals(self) -> int:
        return len(self.revival_intervals)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "death_time": self.death_time,
            "birth_time": self.birth_time,
            "revivals": [list(iv) for iv in self.revival_intervals],
            "max_concurrence": self.max_concurrence,
            "arg_max_tau": self.arg_max_tau,
            "enhanced": self.enhanced,
        }


def _crossing(t0: float, t1: float, c0: float, c1: float, level: float) -> float:
    if c1 == c0:
        return t1
    return float(t0 + (c0 - level) / (c0 - c1) * (t1 - t0))


def events_from_series(times: np.ndarray, values: np.ndarray, threshold: float = 1e-6) -> EntanglementEvents:
    """Events of a sampled concurrence curve.

    Crossings of ``threshold`` are located by linear interpolation between
    neighbouring samples.
    """
    t = np.asarray(times, dtype=float)
    c = np.asarray(values, dtype=float)
    if t.size == 0 or t.shape != c.shape:
        raise ValueError("times and values must be non-empty and of equal length")
    above = c > threshold
    downs = []
    ups = []
    for k in np.flatnonzero(above[:-1] != above[1:]):
        point = _crossing(t[k], t[k + 1], c[k], c[k + 1], threshold)
        (downs if above[k] else ups).append(point)

    death = downs[0] if downs else None
    birth = ups[0] if (not above[0] and ups) else None

    revivals = []
    if death is not None:
        for start in (u for u in ups if u > death):
            end = next((d for d in downs if d > start), float(t[-1]))
            revivals.append((start, end))

    k_max = int(np.argmax(c))
    c0 = float(c[0])
    return EntanglementEvents(
        death_time=death,
        birth_time=birth,
        revival_intervals=revivals,
        max_concurrence=float(c[k_max]),
        arg_max_tau=float(t[k_max]),
        enhanced=bool(c[k_max] > c0 + threshold),
        initial_concurrence=c0,
    )


def detect_events(trajectory: StateTrajectory, threshold: float = 1e-6) -> EntanglementEvents:
    """Death, birth, revivals, maximum and enhancement of a trajectory."""
    return events_from_series(trajectory.times, concurrence_x(trajectory.states), threshold)


def refine_minima(trajectory: StateTrajectory, rates: RateCoefficients, threshold: float = 1e-6) -> StateTrajectory:
    """Resolve dips of the concurrence that fall between samples.

    Every interior local minimum of the sampled concurrence that stays above
    ``threshold`` is re-located by bounded minimisation of the unclipped
    witness on the exact propagator. Where the refined minimum is lower than
    the sample, it is inserted into the trajectory.
    """
    t = trajectory.times
    c = concurrence_x(trajectory.states)
    if t.size < 3:
        return trajectory
    interior = np.flatnonzero((c[1:-1] <= c[:-2]) & (c[1:-1] <= c[2:]) & (c[1:-1] > threshold)) + 1
    new_times = []
    new_states = []
    for k in interior:
        origin = trajectory.states[k - 1]
        t0, t1 = t[k - 1], t[k + 1]

        def witness(tau: float) -> float:
            return float(concurrence_witness(propagate(origin, rates, tau - t0)))

        res = minimize_scalar(witness, bounds=(t0, t1), method="bounded", options={"xatol": 1e-9 * max(1.0, t1)})
        if res.fun < c[k] and t0 < res.x < t1 and res.x != t[k]:
            new_times.append(float(res.x))
            new_states.append(propagate(origin, rates, res.x - t0))
            LOGGER.debug("refined concurrence minimum near tau=%.6g to %.3g", res.x, max(res.fun, 0.0))
    return trajectory.with_samples(new_times, new_states)
