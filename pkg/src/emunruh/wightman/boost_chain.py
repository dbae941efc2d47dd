"""Comoving correlators assembled numerically from the lab-frame field tensor.

The electric field seen by atom ``alpha`` is ``E_i = F_{mu nu} e_i^mu u^nu``
with ``(u, e_i)`` the comoving tetrad of :func:`emunruh.frames.comoving_tetrad`.
Contracting :func:`field_strength_2pt` with the two tetrads gives the
comoving correlator for any trajectory family, at complex lags too. For
uniform acceleration this is the production evaluator.
"""

import logging

import numpy as np

from ..frames import Family, KinematicParams, comoving_tetrad, worldline_array
from .base import ArrayLike, CorrelationTensor, check_pair
from .vacuum import field_strength_2pt

LOGGER = logging.getLogger(__name__)


class BoostChainCorrelator(CorrelationTensor):
    """Comoving correlator from boosted (and rotated) lab-frame tensors.

    Parameters
    ----------
    params : KinematicParams
        Trajectory of the pair. Circular motion needs a finite ``v``. For the
        thermal family this evaluates the zero-temperature static correlator.
    base_tau : float, optional
        Proper time of the earlier point; the result does not depend on it.
    """

    def __init__(self, params: KinematicParams, base_tau: float = 0.0):
        self.params = params
        self.family = params.family
        self.base_tau = float(base_tau)
        if params.family is Family.UNIFORM:
            self.period = 2.0 * np.pi / params.a
        else:
            self.period = None

    def tensor(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        u = np.asarray(u, dtype=complex)
        tau = self.base_tau + u
        tau0 = np.asarray(self.base_tau)
        delta = worldline_array(self.params, alpha, tau) - worldline_array(
            self.params, beta, tau0
        )
        ff = field_strength_2pt(delta)
        frame = comoving_tetrad(self.params, tau)
        frame0 = comoving_tetrad(self.params, tau0)
        return np.einsum(
            "...im,...n,ka,b,...mnab->...ik",
            frame[..., 1:, :],
            frame[..., 0, :],
            frame0[1:, :],
            frame0[0, :],
            ff,
        )

    def poles(self, alpha: int, beta: int) -> np.ndarray:
        check_pair(alpha, beta)
        p = self.params
        if alpha == beta:
            return np.array([0.0 + 0.0j])
        if p.family is Family.UNIFORM:
            root = 2.0 / p.a * np.arcsinh(0.5 * p.a * p.L)
            return np.array([-root, root], dtype=complex)
        if p.family is Family.THERMAL:
            return np.array([-p.L, p.L], dtype=complex)
        return super().poles(alpha, beta)


def boost_chain_2pt(
    i,
    j,
    alpha: int,
    beta: int,
    u: ArrayLike,
    params: KinematicParams,
    eps: float,
    base_tau: float = 0.0,
):
    """Boost-chain correlator component at ``u - i eps``."""
    if eps < 1e-10 * np.max(np.abs(u)):
        LOGGER.warning(
            "regulator eps=%.3g is ill-conditioned relative to |u|=%.3g",
            eps,
            float(np.max(np.abs(u))),
        )
    return BoostChainCorrelator(params, base_tau).component(i, j, alpha, beta, u, eps)
