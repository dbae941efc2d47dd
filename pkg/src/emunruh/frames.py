"""Worldlines and comoving frames for pairs of synchronously moving atoms.

All quantities are in natural units (hbar = c = 1) with the atomic transition
frequency fixed to one, so accelerations are measured in units of the
frequency and lengths and times in units of its inverse.

Three trajectory families are supported:

* ``circular`` -- both atoms orbit the z axis with speed ``v`` and proper
  centripetal acceleration ``a``; atom 2 sits a distance ``L`` above atom 1.
* ``uniform`` -- both atoms follow hyperbolic worldlines with proper
  acceleration ``a`` along x, offset by ``L`` along z.
* ``thermal`` -- static atoms separated by ``L`` along z, immersed in a bath
  at temperature ``T`` (the Unruh temperature ``a / 2 pi`` by default).

The vectorised helpers accept complex proper times so that correlators built
on top of them can be continued into the complex lag plane.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

ArrayLike = Union[float, complex, np.ndarray]

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


class Family(str, Enum):
    """Trajectory family of the atom pair."""

    CIRCULAR = "circular"
    UNIFORM = "uniform"
    THERMAL = "thermal"

    @classmethod
    def parse(cls, value: Union[str, "Family"]) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown trajectory family {value!r}; expected one of {names}")


@dataclass(frozen=True)
class KinematicParams:
    """Kinematic parameters of an atom pair.

    Parameters
    ----------
    family : Family or str
        Trajectory family.
    a : float
        Proper acceleration. Must be positive for circular and uniform
        motion; for the thermal family it only fixes the default temperature.
    L : float
        Interatomic separation along z.
    v : float or None, optional
        Lab-frame orbital speed for circular motion. ``None`` selects the
        ultrarelativistic limit ``v -> 1`` at fixed ``a``.
    temperature : float or None, optional
        Bath temperature for the thermal family. Defaults to ``a / (2 pi)``.
    """

    family: Family
    a: float
    L: float
    v: Optional[float] = None
    temperature: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if not np.isfinite(self.L) or self.L <= 0:
            raise ValueError("separation L must be positive and finite")
        if not np.isfinite(self.a) or self.a < 0:
            raise ValueError("acceleration a must be non-negative and finite")
        if self.family in (Family.CIRCULAR, Family.UNIFORM) and self.a <= 0:
            raise ValueError(f"{self.family.value} motion requires a > 0")
        if self.v is not None:
            if self.family is not Family.CIRCULAR:
                raise ValueError("an orbital speed v only applies to circular motion")
            if not 0.0 < self.v < 1.0:
                raise ValueError("orbital speed v must lie in (0, 1)")
        if self.family is Family.THERMAL:
            if self.temperature is None and self.a <= 0:
                raise ValueError("thermal family needs a > 0 or an explicit temperature")
            if self.temperature is not None and not self.temperature > 0:
                raise ValueError("temperature must be positive")
        elif self.temperature is not None:
            raise ValueError("an explicit temperature only applies to the thermal family")

    @property
    def ultrarelativistic(self) -> bool:
        return self.family is Family.CIRCULAR and self.v is None

    @property
    def gamma(self) -> float:
        """Lorentz factor of the orbital motion (``inf`` in the v -> 1 limit)."""
        if self.v is None:
            return np.inf
        return 1.0 / np.sqrt(1.0 - self.v * self.v)

    @property
    def radius(self) -> float:
        """Orbit radius ``R = gamma^2 v^2 / a``."""
        return self.gamma ** 2 * self.v ** 2 / self.a if self.v is not None else np.inf

    @property
    def angular_velocity(self) -> float:
        """Lab-frame angular velocity ``Omega = v / R``."""
        return self.v / self.radius if self.v is not None else 0.0

    @property
    def unruh_temperature(self) -> float:
        return self.a / (2.0 * np.pi)

    @property
    def bath_temperature(self) -> float:
        """Temperature of the thermal bath (explicit or Unruh)."""
        if self.temperature is not None:
            return float(self.temperature)
        return self.unruh_temperature


@dataclass(frozen=True)
class SpacetimeEvent:
    """Lab-frame event ``(t, x, y, z)``."""

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not np.all(np.isfinite([self.t, self.x, self.y, self.z])):
            raise ValueError("spacetime event components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=float)


def _atom_offset(params: KinematicParams, atom: int) -> float:
    if atom not in (1, 2):
        raise ValueError("atom index must be 1 or 2")
    return 0.0 if atom == 1 else params.L


def _require_finite_velocity(params: KinematicParams) -> None:
    if params.family is Family.CIRCULAR and params.v is None:
        raise ValueError("circular kinematics need a finite orbital speed v")


def _orbital_phase(params: KinematicParams, tau: np.ndarray) -> np.ndarray:
    return params.gamma * params.angular_velocity * tau


def worldline_array(params: KinematicParams, atom: int, tau: ArrayLike) -> np.ndarray:
    """Vectorised worldline; returns an array of shape ``tau.shape + (4,)``."""
    z0 = _atom_offset(params, atom)
    tau = np.asarray(tau)
    dtype = np.result_type(tau, float)
    zero = np.zeros(tau.shape, dtype=dtype)
    if params.family is Family.CIRCULAR:
        _require_finite_velocity(params)
        phase = _orbital_phase(params, tau)
        t = params.gamma * tau
        x = params.radius * np.cos(phase)
        y = params.radius * np.sin(phase)
    elif params.family is Family.UNIFORM:
        t = np.sinh(params.a * tau) / params.a
        x = np.cosh(params.a * tau) / params.a
        y = zero
    else:
        t = tau + zero
        x = zero
        y = zero
    return np.stack([t + zero, x + zero, y, zero + z0], axis=-1)


def worldline(params: KinematicParams, atom: int, tau: float) -> SpacetimeEvent:
    """Lab-frame event of ``atom`` at proper time ``tau``."""
    tau = float(tau)
    if not np.isfinite(tau):
        raise ValueError("proper time must be finite")
    t, x, y, z = worldline_array(params, atom, tau)
    return SpacetimeEvent(float(t), float(x), float(y), float(z))


def four_velocity(params: KinematicParams, atom: int, tau: ArrayLike) -> np.ndarray:
    """Four-velocity ``dX/dtau``; identical for both atoms."""
    _atom_offset(params, atom)
    tau = np.asarray(tau)
    zero = np.zeros(tau.shape, dtype=np.result_type(tau, float))
    if params.family is Family.CIRCULAR:
        _require_finite_velocity(params)
        phase = _orbital_phase(params, tau)
        g, v = params.gamma, params.v
        comps = [g + zero, -g * v * np.sin(phase), g * v * np.cos(phase), zero]
    elif params.family is Family.UNIFORM:
        comps = [np.cosh(params.a * tau), np.sinh(params.a * tau), zero, zero]
    else:
        comps = [1.0 + zero, zero, zero, zero]
    return np.stack(comps, axis=-1)


def lorentz_boost(velocity) -> np.ndarray:
    """Boost into the rest frame of an observer moving with ``velocity``.

    Parameters
    ----------
    velocity : array_like, shape (3,)
        Three-velocity in the lab frame with ``|velocity| < 1``.

    Returns
    -------
    ndarray, shape (4, 4)
        Contravariant matrix ``Lambda`` with ``x' = Lambda @ x``.
    """
    beta = np.asarray(velocity, dtype=float)
    if beta.shape != (3,):
        raise ValueError("velocity must be a 3-vector")
    b2 = float(beta @ beta)
    if b2 >= 1.0:
        raise ValueError("speed must be below 1")
    lam = np.eye(4)
    if b2 == 0.0:
        return lam
    g = 1.0 / np.sqrt(1.0 - b2)
    lam[0, 0] = g
    lam[0, 1:] = lam[1:, 0] = -g * beta
    lam[1:, 1:] += (g - 1.0) * np.outer(beta, beta) / b2
    return lam


def _boost_matrices(params: KinematicParams, tau: np.ndarray) -> np.ndarray:
    tau = np.asarray(tau)
    dtype = np.result_type(tau, float)
    lam = np.zeros(tau.shape + (4, 4), dtype=dtype)
    lam[..., 2, 2] = 1.0
    lam[..., 3, 3] = 1.0
    if params.family is Family.CIRCULAR:
        _require_finite_velocity(params)
        phase = _orbital_phase(params, tau)
        nx, ny = -np.sin(phase), np.cos(phase)
        g, b = params.gamma, params.v
        lam[..., 0, 0] = g
        lam[..., 0, 1] = lam[..., 1, 0] = -g * b * nx
        lam[..., 0, 2] = lam[..., 2, 0] = -g * b * ny
        lam[..., 1, 1] = 1.0 + (g - 1.0) * nx * nx
        lam[..., 1, 2] = lam[..., 2, 1] = (g - 1.0) * nx * ny
        lam[..., 2, 2] = 1.0 + (g - 1.0) * ny * ny
    elif params.family is Family.UNIFORM:
        ch, sh = np.cosh(params.a * tau), np.sinh(params.a * tau)
        lam[..., 0, 0] = lam[..., 1, 1] = ch
        lam[..., 0, 1] = lam[..., 1, 0] = -sh
    else:
        lam[..., 0, 0] = lam[..., 1, 1] = 1.0
    return lam


def boost_matrix(params: KinematicParams, tau: float) -> np.ndarray:
    """Instantaneous boost from the lab frame into the atoms' rest frame.

    For circular motion the boost velocity is ``v n`` with
    ``n = (-sin(Omega gamma tau), cos(Omega gamma tau), 0)``; for uniform
    acceleration it is ``tanh(a tau)`` along x.
    """
    if params.family is Family.THERMAL:
        raise ValueError("boost_matrix is defined for circular and uniform motion only")
    return np.real(_boost_matrices(params, np.asarray(float(tau))))


def _rotation_matrices(params: KinematicParams, tau: np.ndarray) -> np.ndarray:
    phase = _orbital_phase(params, np.asarray(tau))
    c, s = np.cos(phase), np.sin(phase)
    rot = np.zeros(phase.shape + (3, 3), dtype=np.result_type(phase, float))
    rot[..., 0, 0] = c
    rot[..., 0, 1] = -s
    rot[..., 1, 0] = s
    rot[..., 1, 1] = c
    rot[..., 2, 2] = 1.0
    return rot


def rotation_matrix(params: KinematicParams, tau: float) -> np.ndarray:
    """Rotation by the orbital angle ``Omega gamma tau`` about z."""
    if params.family is not Family.CIRCULAR:
        raise ValueError("rotation_matrix is defined for circular motion only")
    _require_finite_velocity(params)
    return np.real(_rotation_matrices(params, np.asarray(float(tau))))


def comoving_tetrad(params: KinematicParams, tau: ArrayLike) -> np.ndarray:
    """Orthonormal comoving frame along the worldline.

    Returns an array of shape ``tau.shape + (4, 4)`` whose rows are the
    contravariant components of the four-velocity followed by the spatial
    axes: ``(rho, phi, z)`` for circular motion, ``(x, y, z)`` otherwise.
    """
    tau = np.asarray(tau)
    lam = _boost_matrices(params, tau)
    inverse = ETA @ np.swapaxes(lam, -1, -2) @ ETA
    frame = np.swapaxes(inverse, -1, -2)
    if params.family is not Family.CIRCULAR:
        return frame
    rot = _rotation_matrices(params, tau)
    # radial, azimuthal and axial unit vectors of the orbit, boosted
    spatial = np.einsum("...ji,...jm->...im", rot, frame[..., 1:, :])
    return np.concatenate([frame[..., :1, :], spatial], axis=-2)
