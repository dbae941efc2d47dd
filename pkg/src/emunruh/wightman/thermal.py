"""Static atoms in a thermal bath.

The thermal correlator is the image sum of the static vacuum correlator
over imaginary lag shifts ``n / T``; it is periodic with period ``i / T``.
"""

import numpy as np

from ..errors import TruncationError
from ..frames import Family
from .base import ArrayLike, CorrelationTensor, Kernel, check_pair
from .vacuum import lab_electric_tensor


class StaticVacuumCorrelator(CorrelationTensor):
    """Zero-temperature correlator of two static atoms separated along z."""

    family = Family.THERMAL

    def __init__(self, L: float):
        if not L > 0:
            raise ValueError("separation L must be positive")
        self.L = float(L)

    def tensor(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        u = np.asarray(u, dtype=complex)
        dz = 0.0 if alpha == beta else (-self.L if alpha == 1 else self.L)
        zero = np.zeros_like(u)
        delta = np.stack([u, zero, zero, zero + dz], axis=-1)
        return lab_electric_tensor(delta)

    def poles(self, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        if alpha == beta:
            return np.array([0.0 + 0.0j])
        return np.array([-self.L, self.L], dtype=complex)


class ThermalCorrelator(CorrelationTensor):
    """Static atoms in a bath at temperature ``T``.

    Parameters
    ----------
    temperature : float
        Bath temperature.
    L : float
        Separation along z.
    images : int, optional
        Truncation ``N`` of the image sum ``n = -N..N``. Defaults to ``200``.
    tol : float, optional
        Largest admitted ratio of :meth:`tail_bound` to the retained sum,
        both taken as the largest tensor component at each lag. Defaults
        to ``1e-6``.
    """

    family = Family.THERMAL

    def __init__(self, temperature: float, L: float, images: int = 200, tol: float = 1e-6):
        if not temperature > 0:
            raise ValueError("temperature must be positive")
        if images < 1:
            raise ValueError("image truncation N must be at least 1")
        self.temperature = float(temperature)
        self.images = int(images)
        self.tol = float(tol)
        self.vacuum = StaticVacuumCorrelator(L)
        self.period = 1.0 / self.temperature

    @property
    def L(self) -> float:
        return self.vacuum.L

    def image_sum(self, u: ArrayLike, alpha: int, beta: int, n_min: int, n_max: int) -> np.ndarray:
        """Partial image sum ``sum_{n=n_min}^{n_max} G_vac(u - i n / T)``."""
        u = np.asarray(u, dtype=complex)
        shifts = -1j * np.arange(n_min, n_max + 1) / self.temperature
        terms = self.vacuum.tensor(u[..., None] + shifts, alpha, beta)
        return terms.sum(axis=-3)

    def tail_bound(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        """Estimate of the neglected images beyond ``|n| = N``.

        Image terms decay like ``n^-4``, so the tail on either side is about
        ``N / 3`` times the outermost retained term.
        """
        u = np.asarray(u, dtype=complex)
        n = self.images
        edge = self.vacuum.tensor(u[..., None] + np.array([-1j, 1j]) * n / self.temperature, alpha, beta)
        return np.abs(edge).sum(axis=-3) * n / 3.0

    def tensor(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        total = self.image_sum(u, alpha, beta, -self.images, self.images)
        bound = self.tail_bound(u, alpha, beta).max(axis=(-2, -1))
        size = np.abs(total).max(axis=(-2, -1))
        ratio = np.divide(bound, size, out=np.full(bound.shape, np.inf), where=size > 0)
        ratio = np.where(bound == 0, 0.0, ratio)
        worst = float(np.max(ratio))
        if worst > self.tol:
            raise TruncationError(
                f"thermal image sum with N={self.images} has tail bound {float(np.max(bound)):.3e}, "
                f"{worst:.2e} of the sum, above tolerance {self.tol:.1e}; increase the number of images"
            )
        return total

    def poles(self, alpha: int, beta: int) -> np.ndarray:
        return self.vacuum.poles(alpha, beta)

    def spectral_kernel(self, alpha: int, beta: int) -> Kernel:
        # residues inside one period strip come from the n = 0 image alone
        check_pair(alpha, beta)
        return (
            lambda z: self.vacuum.tensor(z, alpha, beta),
            self.vacuum.poles(alpha, beta),
            self.period,
        )


def thermal_2pt(
    i,
    j,
    alpha: int,
    beta: int,
    u: ArrayLike,
    T: float,
    L: float,
    eps: float,
    images: int = 200,
    tol: float = 1e-6,
):
    """Thermal image-sum correlator component at ``u - i eps``."""
    return ThermalCorrelator(T, L, images, tol).component(i, j, alpha, beta, u, eps)
