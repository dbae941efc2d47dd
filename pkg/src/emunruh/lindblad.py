"""Two-atom master equation in the coupled basis.

The reduced density matrix is tracked through its eight X-state entries in
the basis ``|G> = |00>``, ``|A> = (|10> - |01>) / sqrt(2)``,
``|S> = (|10> + |01>) / sqrt(2)``, ``|E> = |11>``. All other entries decouple
and stay zero for the initial states used here, so they are not evolved.

Times are measured in units of ``1 / Gamma0`` because the rate coefficients
are normalised by ``Gamma0``.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .errors import IntegrationError, InvalidStateError
from .spectral import RateCoefficients

LOGGER = logging.getLogger(__name__)

COMPONENTS = ("GG", "EE", "AA", "SS", "AS", "SA", "GE", "EG")
INDEX = {name: k for k, name in enumerate(COMPONENTS)}

TRACE_TOL = 1e-9
HERMITIAN_TOL = 1e-10
POSITIVITY_TOL = 1e-9

# largest admitted difference between the Runge-Kutta and exact paths
PATH_AGREEMENT = 1e-8
TIGHTEN = 100.0
MIN_RTOL = 1e-13
MIN_ATOL = 1e-16

# product basis |00>, |01>, |10>, |11>; columns G, A, S, E
_SQ = 1.0 / np.sqrt(2.0)
COUPLED_TO_PRODUCT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, -_SQ, _SQ, 0.0],
        [0.0, _SQ, _SQ, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)


@dataclass(frozen=True)
class XState:
    """X-state entries ``rho_IJ = <I| rho |J>`` in the coupled basis."""

    rho_GG: float = 0.0
    rho_EE: float = 0.0
    rho_AA: float = 0.0
    rho_SS: float = 0.0
    rho_AS: complex = 0.0
    rho_SA: complex = 0.0
    rho_GE: complex = 0.0
    rho_EG: complex = 0.0

    def to_vector(self) -> np.ndarray:
        return np.array([getattr(self, f"rho_{name}") for name in COMPONENTS], dtype=complex)

    @classmethod
    def from_vector(cls, vec: Sequence[complex]) -> "XState":
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (8,):
            raise ValueError("an X state has eight entries")
        populations = [float(vec[k].real) for k in range(4)]
        coherences = [complex(vec[k]) for k in range(4, 8)]
        return cls(*populations, *coherences)

    @property
    def trace(self) -> float:
        return self.rho_GG + self.rho_EE + self.rho_AA + self.rho_SS

    def coupled_matrix(self) -> np.ndarray:
        return coupled_matrix(self.to_vector())

    def validate(self) -> "XState":
        check_states(self.to_vector()[None, :])
        return self


def coupled_matrix(vec: np.ndarray) -> np.ndarray:
    """4x4 matrices in the order ``G, A, S, E`` from ``(..., 8)`` entry vectors."""
    vec = np.asarray(vec, dtype=complex)
    out = np.zeros(vec.shape[:-1] + (4, 4), dtype=complex)
    gg, ee, aa, ss, as_, sa, ge, eg = np.moveaxis(vec, -1, 0)
    out[..., 0, 0] = gg
    out[..., 0, 3] = ge
    out[..., 3, 0] = eg
    out[..., 3, 3] = ee
    out[..., 1, 1] = aa
    out[..., 1, 2] = as_
    out[..., 2, 1] = sa
    out[..., 2, 2] = ss
    return out


def to_product_matrix(state: Union[XState, np.ndarray]) -> np.ndarray:
    """Density matrix in the product basis ``|00>, |01>, |10>, |11>``.

    Accepts an :class:`XState` or an array of entry vectors with trailing
    dimension 8.
    """
    vec = state.to_vector() if isinstance(state, XState) else np.asarray(state, dtype=complex)
    u = COUPLED_TO_PRODUCT
    return u @ coupled_matrix(vec) @ u.T


def check_states(vectors: np.ndarray, times: Optional[np.ndarray] = None) -> None:
    """Raise :class:`InvalidStateError` if any sample breaks trace, Hermiticity or positivity."""
    vec = np.atleast_2d(np.asarray(vectors, dtype=complex))

    def where(k: int) -> str:
        return f" at tau={times[k]:.6g}" if times is not None else ""

    trace = vec[:, :4].sum(axis=1)
    bad = np.flatnonzero(np.abs(trace - 1.0) > TRACE_TOL)
    if bad.size:
        k = bad[0]
        raise InvalidStateError(f"trace deviates from one by {abs(trace[k] - 1.0):.3g}{where(k)}")
    populations = np.abs(vec[:, :4].imag).max(axis=1)
    herm = np.maximum(
        np.abs(vec[:, 4] - np.conj(vec[:, 5])),
        np.abs(vec[:, 6] - np.conj(vec[:, 7])),
    )
    bad = np.flatnonzero(np.maximum(herm, populations) > HERMITIAN_TOL)
    if bad.size:
        raise InvalidStateError(f"state is not Hermitian{where(bad[0])}")
    mats = coupled_matrix(vec)
    mats = 0.5 * (mats + np.conj(np.swapaxes(mats, -1, -2)))
    lowest = np.linalg.eigvalsh(mats)[:, 0]
    bad = np.flatnonzero(lowest < -POSITIVITY_TOL)
    if bad.size:
        k = bad[0]
        raise InvalidStateError(f"negative eigenvalue {lowest[k]:.3g}{where(k)}")


_PSI_PATTERN = re.compile(r"^psi\s*\(\s*([^)]+)\s*\)$", re.IGNORECASE)


def initial_state(spec: str, p: Optional[float] = None) -> XState:
    """Pure initial states.

    Parameters
    ----------
    spec : str
        One of ``S``, ``A``, ``E``, ``G``, ``BellGE`` or ``Psi``. ``Psi`` may
        carry its weight inline, e.g. ``"Psi(0.25)"``.
    p : float, optional
        Weight of ``|A>`` in ``sqrt(p)|A> + sqrt(1 - p)|S>``.
    """
    name = str(spec).strip()
    match = _PSI_PATTERN.match(name)
    if match:
        if p is not None:
            raise ValueError("give the Psi weight either inline or as p, not both")
        try:
            p = float(match.group(1))
        except ValueError:
            raise ValueError(f"cannot parse Psi weight in {spec!r}")
        name = "psi"
    key = name.lower()
    if key == "s":
        return XState(rho_SS=1.0)
    if key == "a":
        return XState(rho_AA=1.0)
    if key == "e":
        return XState(rho_EE=1.0)
    if key == "g":
        return XState(rho_GG=1.0)
    if key == "bellge":
        return XState(rho_GG=0.5, rho_EE=0.5, rho_GE=0.5, rho_EG=0.5)
    if key == "psi":
        if p is None:
            raise ValueError("Psi needs a weight p")
        if not 0.0 < p < 1.0:
            raise ValueError(f"Psi weight p must lie in (0, 1), got {p}")
        if p == 0.5:
            LOGGER.warning("Psi(1/2) equals |10>, a product state")
        c = np.sqrt(p * (1.0 - p))
        return XState(rho_AA=p, rho_SS=1.0 - p, rho_AS=c, rho_SA=c)
    raise ValueError(f"unknown initial state {spec!r}")


def generator_matrix(rates: RateCoefficients) -> np.ndarray:
    """Real 8x8 matrix ``M`` with ``d(rho)/dtau = M rho`` in :data:`COMPONENTS` order."""
    A1, A2, A3, A4 = rates.A1, rates.A2, rates.A3, rates.A4
    B1, B2, B3, B4 = rates.B1, rates.B2, rates.B3, rates.B4
    s = A1 + A2
    b = B1 + B2
    a34 = A3 + A4
    b34 = B3 + B4
    GG, EE, AA, SS, AS, SA, GE, EG = range(8)
    m = np.zeros((8, 8))

    m[GG, GG] = -2.0 * (s - b)
    m[GG, AA] = s - a34 + b - b34
    m[GG, SS] = s + a34 + b + b34
    m[GG, AS] = A1 - A2 - A3 + A4 + B1 - B2 - B3 + B4
    m[GG, SA] = A1 - A2 + A3 - A4 + B1 - B2 + B3 - B4

    m[EE, EE] = -2.0 * (s + b)
    m[EE, AA] = s - a34 - b + b34
    m[EE, SS] = s + a34 - b - b34
    m[EE, AS] = -A1 + A2 + A3 - A4 + B1 - B2 - B3 + B4
    m[EE, SA] = -A1 + A2 - A3 + A4 + B1 - B2 + B3 - B4

    m[AA, AA] = -2.0 * (s - a34)
    m[AA, GG] = s - a34 - b + b34
    m[AA, EE] = s - a34 + b - b34
    m[AA, AS] = -B1 + B2 + B3 - B4
    m[AA, SA] = -B1 + B2 - B3 + B4

    m[SS, SS] = -2.0 * (s + a34)
    m[SS, GG] = s + a34 - b - b34
    m[SS, EE] = s + a34 + b + b34
    m[SS, AS] = -B1 + B2 + B3 - B4
    m[SS, SA] = -B1 + B2 - B3 + B4

    m[AS, GG] = A1 - A2 - A3 + A4 - B1 + B2 + B3 - B4
    m[AS, EE] = -A1 + A2 + A3 - A4 - B1 + B2 + B3 - B4
    m[AS, AA] = m[AS, SS] = -B1 + B2 - B3 + B4
    m[AS, AS] = -2.0 * s

    m[SA, GG] = A1 - A2 + A3 - A4 - B1 + B2 - B3 + B4
    m[SA, EE] = -A1 + A2 - A3 + A4 - B1 + B2 - B3 + B4
    m[SA, AA] = m[SA, SS] = -B1 + B2 + B3 - B4
    m[SA, SA] = -2.0 * s

    m[GE, GE] = -2.0 * s
    m[EG, EG] = -2.0 * s
    return m


def derivative(state: XState, rates: RateCoefficients) -> np.ndarray:
    """Right-hand side of the coupled-basis equations as an 8-vector."""
    return generator_matrix(rates) @ state.to_vector()


def propagate(vec: np.ndarray, rates: RateCoefficients, dt: Union[float, np.ndarray]) -> np.ndarray:
    """Exact propagation ``expm(M dt) rho`` of one entry vector.

    ``dt`` may be an array; the result then has shape ``dt.shape + (8,)``.
    """
    m = generator_matrix(rates)
    dt = np.asarray(dt, dtype=float)
    if dt.ndim == 0:
        return expm(m * dt) @ np.asarray(vec, dtype=complex)
    props = np.array([expm(m * d) for d in dt.ravel()])
    return (props @ np.asarray(vec, dtype=complex)).reshape(dt.shape + (8,))


def relaxation_gap(rates: RateCoefficients, rel_tol: float = 1e-10) -> float:
    """Slowest non-zero relaxation rate ``min |Re lambda|`` of the generator."""
    lam = np.linalg.eigvals(generator_matrix(rates))
    decay = np.abs(lam.real)
    scale = decay.max() if decay.size else 0.0
    nonzero = decay[decay > rel_tol * max(scale, 1e-300)]
    return float(nonzero.min()) if nonzero.size else 0.0


def default_tau_max(rates: RateCoefficients, fast_multiple: float = 12.0, slow_multiple: float = 16.0, cap: float = 50.0) -> float:
    """Evolution horizon ``max(12 / (2 (A1 + A2)), 16 / gap)``.

    The slow term is capped at ``cap`` times the fast one so that a nearly
    decoupled subradiant channel does not stretch the run indefinitely.
    """
    emission = rates.emission_rate()
    if not emission > 0:
        raise ValueError("rates vanish; give tau_max explicitly")
    fast = fast_multiple / emission
    gap = relaxation_gap(rates)
    slow = slow_multiple / gap if gap > 0 else fast
    return float(max(fast, min(slow, cap * fast)))


def sample_grid(tau_max: float, rates: Optional[RateCoefficients] = None, *, fine: int = 1200, coarse: int = 800, dtau: Optional[float] = None) -> np.ndarray:
    """Output times on ``[0, tau_max]``.

    With ``dtau`` the grid is uniform. Otherwise the early window
    ``[0, 12 / (2 (A1 + A2))]`` gets ``fine`` intervals and the rest ``coarse``.
    """
    if not tau_max > 0:
        raise ValueError("tau_max must be positive")
    if dtau is not None:
        if not dtau > 0:
            raise ValueError("dtau must be positive")
        n = max(1, int(np.ceil(tau_max / dtau - 1e-9)))
        return np.linspace(0.0, tau_max, n + 1)
    split = tau_max
    if rates is not None and rates.emission_rate() > 0:
        split = min(tau_max, 12.0 / rates.emission_rate())
    head = np.linspace(0.0, split, fine + 1)
    if split >= tau_max:
        return head
    tail = np.linspace(split, tau_max, coarse + 1)[1:]
    return np.concatenate([head, tail])


@dataclass
class StateTrajectory:
    """Sampled evolution.

    Attributes
    ----------
    times : ndarray, shape (N,)
        Strictly increasing proper times in units of ``1 / Gamma0``.
    states : ndarray, shape (N, 8)
        Entry vectors in :data:`COMPONENTS` order.
    metadata : dict
        Integrator diagnostics (``method``, ``nfev``, ``rtol``, ``atol``,
        ``max_expm_deviation``).
    """

    times: np.ndarray
    states: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        if self.times.ndim != 1 or self.times.size == 0:
            raise ValueError("a trajectory needs at least one sample")
        if self.states.shape != (self.times.size, 8):
            raise ValueError("states must have shape (len(times), 8)")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("sample times must be strictly increasing")

    def __len__(self) -> int:
        return self.times.size

    def state(self, k: int) -> XState:
        return XState.from_vector(self.states[k])

    def column(self, name: str) -> np.ndarray:
        return self.states[:, INDEX[name]]

    def with_samples(self, times: Iterable[float], states: Iterable[np.ndarray]) -> "StateTrajectory":
        """Copy with extra samples merged in time order."""
        extra_t = np.asarray(list(times), dtype=float)
        if extra_t.size == 0:
            return self
        extra_s = np.asarray(list(states), dtype=complex).reshape(-1, 8)
        t = np.concatenate([self.times, extra_t])
        s = np.concatenate([self.states, extra_s])
        order = np.argsort(t, kind="stable")
        t, s = t[order], s[order]
        keep = np.concatenate([[True], np.diff(t) > 0])
        meta = dict(self.metadata, refined_samples=self.metadata.get("refined_samples", 0) + int(extra_t.size))
        return StateTrajectory(t[keep], s[keep], meta)


def _expm_path(m: np.ndarray, vec0: np.ndarray, times: np.ndarray) -> np.ndarray:
    out = np.empty((times.size, 8), dtype=complex)
    out[0] = expm(m * times[0]) @ vec0 if times[0] != 0 else vec0
    cache: Dict[float, np.ndarray] = {}
    for k in range(1, times.size):
        dt = times[k] - times[k - 1]
        key = round(dt, 14)
        if key not in cache:
            cache[key] = expm(m * dt)
        out[k] = cache[key] @ out[k - 1]
    return out


def _runge_kutta_path(m, vec0, grid, method, rtol, atol):
    sol = solve_ivp(
        lambda _t, y: m @ y,
        (0.0, float(grid[-1])),
        vec0,
        method=method,
        t_eval=grid,
        rtol=rtol,
        atol=atol,
    )
    if sol.status != 0 or sol.y.shape[1] != grid.size:
        last = float(sol.t[-1]) if sol.t.size else 0.0
        raise IntegrationError(f"Runge-Kutta integration failed: {sol.message}", last)
    return sol.y.T, int(sol.nfev)


def evolve(
    rho0: Union[XState, Sequence[complex]],
    rates: RateCoefficients,
    tau_max: Optional[float] = None,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    times: Optional[Sequence[float]] = None,
    method: str = "DOP853",
    check: bool = True,
) -> StateTrajectory:
    """Integrate the coupled-basis equations.

    The samples are propagated exactly with the matrix exponential of the
    generator. An embedded Runge-Kutta run over the same grid serves as an
    independent check: if the two paths differ by more than
    :data:`PATH_AGREEMENT`, the Runge-Kutta run is repeated once with
    tolerances tightened by :data:`TIGHTEN`, and a remaining disagreement
    raises :class:`IntegrationError`.

    Parameters
    ----------
    rho0 : XState or array_like
        Initial state.
    rates : RateCoefficients
        Dissipator coefficients.
    tau_max : float, optional
        Horizon. Defaults to :func:`default_tau_max`.
    rtol, atol : float, optional
        Tolerances of the embedded Runge-Kutta pair.
    times : sequence of float, optional
        Output times starting at zero. Defaults to :func:`sample_grid`.
    method : str, optional
        Explicit Runge-Kutta method of :func:`scipy.integrate.solve_ivp`.
    check : bool, optional
        Validate trace, Hermiticity and positivity on every sample.

    Returns
    -------
    StateTrajectory
        Matrix-exponential samples; ``metadata["max_expm_deviation"]``
        records the largest difference from the Runge-Kutta path.
    """
    vec0 = rho0.to_vector() if isinstance(rho0, XState) else np.asarray(rho0, dtype=complex)
    if check:
        check_states(vec0[None, :])
    if times is None:
        if tau_max is None:
            tau_max = default_tau_max(rates)
        grid = sample_grid(tau_max, rates)
    else:
        grid = np.asarray(times, dtype=float)
        if grid.ndim != 1 or grid.size < 2 or grid[0] != 0.0 or np.any(np.diff(grid) <= 0):
            raise ValueError("times must start at 0 and increase strictly")
        tau_max = float(grid[-1])
    if not tau_max > 0:
        raise ValueError("tau_max must be positive")

    m = generator_matrix(rates)
    states = _expm_path(m, vec0, grid)

    checked = (rtol, atol)
    path, nfev = _runge_kutta_path(m, vec0, grid, method, *checked)
    error = np.abs(path - states).max(axis=1)
    if error.max() > PATH_AGREEMENT and rtol > MIN_RTOL:
        checked = (max(rtol / TIGHTEN, MIN_RTOL), max(atol / TIGHTEN, MIN_ATOL))
        LOGGER.info(
            "Runge-Kutta path off by %.3g; repeating with rtol=%.1e atol=%.1e",
            error.max(),
            *checked,
        )
        path, nfev = _runge_kutta_path(m, vec0, grid, method, *checked)
        error = np.abs(path - states).max(axis=1)
    deviation = float(error.max())
    if deviation > PATH_AGREEMENT:
        k = int(np.argmax(error))
        raise IntegrationError(
            f"Runge-Kutta and matrix-exponential paths differ by {deviation:.3g}",
            float(grid[k]),
        )
    LOGGER.debug("evolved to tau=%.4g with %d evaluations", grid[-1], nfev)

    if check:
        check_states(states, grid)
    meta = {
        "method": method,
        "rtol": checked[0],
        "atol": checked[1],
        "nfev": nfev,
        "max_expm_deviation": deviation,
    }
    return StateTrajectory(grid, states, meta)
