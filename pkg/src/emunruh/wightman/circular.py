"""Closed-form correlators for atoms in synchronous circular motion.

Components are expressed in the comoving cylindrical basis (rho, phi, z).
Two variants are provided: the generic-velocity forms, which are used for
cross-validation only, and the ultrarelativistic limit ``v -> 1`` at fixed
proper acceleration, which is rational in the lag and drives the dynamics.
"""

import numpy as np

from ..frames import Family, KinematicParams
from .base import ArrayLike, CorrelationTensor, check_pair

PI2 = np.pi ** 2


def _assemble(rr, pp, zz, rp, rz, zp, cross_sign: float) -> np.ndarray:
    """Fill a 3x3 tensor from the independent components.

    ``cross_sign`` is +1 for the pair (1, 2) and -1 for (2, 1); it flips the
    components that are odd under exchanging the atoms.
    """
    rz = cross_sign * rz
    zp = cross_sign * zp
    rows = [
        [rr, rp, rz],
        [-rp, pp, zp],
        [-rz, zp, zz],
    ]
    shape = np.broadcast(rr, pp, zz, rp, rz, zp).shape
    return np.stack(
        [np.stack([np.broadcast_to(c, shape) for c in row], axis=-1) for row in rows],
        axis=-2,
    )


class CircularUltraCorrelator(CorrelationTensor):
    """Ultrarelativistic circular correlators.

    Parameters
    ----------
    a : float
        Proper centripetal acceleration.
    L : float
        Separation of the orbital planes.
    """

    family = Family.CIRCULAR

    def __init__(self, a: float, L: float):
        if not a > 0:
            raise ValueError("acceleration a must be positive")
        if not L > 0:
            raise ValueError("separation L must be positive")
        self.a = float(a)
        self.L = float(L)

    def tensor(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        u = np.asarray(u, dtype=complex)
        a, L = self.a, self.L
        q = a * a * u * u
        if alpha == beta:
            w3 = (12.0 + q) ** 3
            zz = 24.0 * (72.0 + 6.0 * q + q * q) / (PI2 * u ** 4 * w3)
            rr = 24.0 * (72.0 - 30.0 * q + q * q) / (PI2 * u ** 4 * w3)
            pp = 144.0 * (12.0 - 5.0 * q) / (PI2 * u ** 4 * w3)
            rp = 144.0 * a * (12.0 - q) / (PI2 * u ** 3 * w3)
            zero = np.zeros_like(u)
            return _assemble(rr, pp, zz, rp, zero, zero, 1.0)
        L2 = L * L
        d3 = PI2 * (-12.0 * L2 + 12.0 * u * u + q * u * u) ** 3
        zz = 24.0 * (-36.0 * L2 * (2.0 + q) + u * u * (72.0 + 6.0 * q + q * q)) / d3
        rr = 24.0 * (-36.0 * L2 * (-2.0 + q) + u * u * (72.0 - 30.0 * q + q * q)) / d3
        pp = 144.0 * (12.0 * L2 + 12.0 * u * u - 5.0 * q * u * u) / d3
        rz = 288.0 * a * L * u * u * (-6.0 + q) / d3
        rp = 144.0 * a * u * (12.0 * L2 + 12.0 * u * u - q * u * u) / d3
        zp = 1152.0 * L * a * a * u ** 3 / d3
        return _assemble(rr, pp, zz, rp, rz, zp, 1.0 if alpha == 1 else -1.0)

    def poles(self, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        a2 = self.a * self.a
        if alpha == beta:
            roots = np.concatenate([[0.0], np.roots([a2, 0.0, 12.0])])
        else:
            roots = np.roots([a2, 0.0, 12.0, 0.0, -12.0 * self.L ** 2])
        return np.asarray(roots, dtype=complex)


class CircularGeneralCorrelator(CorrelationTensor):
    """Circular correlators at finite orbital speed.

    No tractable Fourier transform exists for these; they serve as a
    reference for the ultrarelativistic limit and the boost chain.
    """

    family = Family.CIRCULAR

    def __init__(self, params: KinematicParams):
        if params.family is not Family.CIRCULAR or params.v is None:
            raise ValueError("generic circular correlators need circular motion with finite v")
        self.params = params

    def tensor(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        p = self.params
        u = np.asarray(u, dtype=complex)
        g, R, Om, v2 = p.gamma, p.radius, p.angular_velocity, p.v ** 2
        L = p.L
        R2 = R * R
        g2u2 = g * g * u * u
        h = u * g * Om
        c, s = np.cos(h), np.sin(h)
        omc = 2.0 * np.sin(0.5 * h) ** 2
        hs = 4.0 * R2 * h * s
        if alpha == beta:
            den = PI2 * (g2u2 - 2.0 * R2 * omc) ** 3
            zz = g * g * (g2u2 + 2.0 * R2 * (1.0 + v2) * omc + R2 * g2u2 * Om * Om * c - hs) / den
            rr = g * g * (g2u2 * c + 2.0 * R2 * (1.0 + v2) * omc + R2 * g2u2 * Om * Om - hs) / den
            pp = (g2u2 * c - 2.0 * R2 * omc) / den
            rp = u * g * g * (-2.0 * R2 * Om * omc + u * g * s) / den
            zero = np.zeros_like(u)
            return _assemble(rr, pp, zz, rp, zero, zero, 1.0)
        L2 = L * L
        sig = L2 + 2.0 * R2 * omc - g2u2
        den = PI2 * sig ** 3
        zz = g * g * (
            L2 * (1.0 - v2 * c) - 2.0 * R2 * (1.0 + v2) * omc - g2u2 * (1.0 + v2 * c) + hs
        ) / den
        rr = g * g * (
            -(L2 + g2u2) * c - 2.0 * R2 * (1.0 + v2) * omc + v2 * (L2 - g2u2) + hs
        ) / den
        pp = -((L2 + g2u2) * c - 2.0 * R2 * omc) / den
        half = 0.5 * h
        rz = 4.0 * L * R * g * g * np.sin(half) * (h * np.cos(half) - (1.0 + v2) * np.sin(half)) / den
        rp = (2.0 * g * R2 * h * omc - g * (L2 + g2u2) * s) / den
        zp = 2.0 * L * R * g * (h * c - s) / den
        return _assemble(rr, pp, zz, rp, rz, zp, 1.0 if alpha == 1 else -1.0)


def circular_2pt_ultra(i, j, alpha: int, beta: int, u: ArrayLike, a: float, L: float, eps: float = 0.0):
    """Ultrarelativistic circular correlator component at ``u - i eps``."""
    return CircularUltraCorrelator(a, L).component(i, j, alpha, beta, u, eps)


def circular_2pt_general(i, j, alpha: int, beta: int, u: ArrayLike, params: KinematicParams, eps: float = 0.0):
    """Finite-velocity circular correlator component at ``u - i eps``."""
    return CircularGeneralCorrelator(params).component(i, j, alpha, beta, u, eps)
