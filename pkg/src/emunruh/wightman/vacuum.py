"""Vacuum two-point functions of the electromagnetic field in the lab frame.

Feynman-gauge potential correlator ``<A_mu(x) A_nu(x')> = eta_{mu nu} D`` with
``D = 1 / (4 pi^2 sigma^2)`` and the regulated interval
``sigma^2 = |dx|^2 - (dt - i eps)^2``. All derivatives are taken analytically.
"""

import numpy as np

from ..frames import ETA, SpacetimeEvent

W = 1.0 / (4.0 * np.pi ** 2)

AXES = {"x": 0, "y": 1, "z": 2}


def potential_2pt(dx, dy, dz, dt, eps):
    """Scalar part of the potential correlator for coordinate differences."""
    if np.any(np.asarray(eps) <= 0):
        raise ValueError("regulator eps must be positive")
    dtr = np.asarray(dt) - 1j * np.asarray(eps)
    return W / (np.square(dx) + np.square(dy) + np.square(dz) - dtr * dtr)


def interval(delta: np.ndarray) -> np.ndarray:
    """Minkowski interval ``delta^mu eta_{mu nu} delta^nu`` along the last axis."""
    return np.einsum("...m,mn,...n->...", delta, ETA, delta)


def lab_electric_tensor(delta: np.ndarray) -> np.ndarray:
    """Electric correlator ``<E_m E'_n>`` for (already regulated) differences.

    Parameters
    ----------
    delta : ndarray, shape (..., 4)
        ``x - x'`` with the time component shifted to ``dt - i eps``.

    Returns
    -------
    ndarray, shape (..., 3, 3)
    """
    delta = np.asarray(delta)
    dt = delta[..., 0]
    dr = delta[..., 1:]
    s2 = interval(delta)[..., None, None]
    eye = np.eye(3)
    outer = dr[..., :, None] * dr[..., None, :]
    return W * (-4.0 * eye / s2 ** 2 + 8.0 * (outer - (dt * dt)[..., None, None] * eye) / s2 ** 3)


def lab_electric_2pt(m, n, event: SpacetimeEvent, event_prime: SpacetimeEvent, eps: float):
    """Component ``<E_m(x) E_n(x')>`` between two lab-frame events."""
    if eps <= 0:
        raise ValueError("regulator eps must be positive")
    try:
        i, j = AXES[m], AXES[n]
    except KeyError:
        raise ValueError("lab components must be one of 'x', 'y', 'z'")
    delta = event.as_array() - event_prime.as_array()
    delta = delta.astype(complex)
    delta[0] -= 1j * eps
    return complex(lab_electric_tensor(delta)[i, j])


def field_strength_2pt(delta: np.ndarray) -> np.ndarray:
    """Covariant correlator ``<F_{mu nu}(x) F_{alpha beta}(x')>``.

    Built from ``<d_mu A_nu d'_alpha A_beta> =
    W eta_{nu beta} (2 eta_{mu alpha} / sigma^4 - 8 delta_mu delta_alpha / sigma^6)``
    antisymmetrised in each index pair. Indices are all lower.

    Parameters
    ----------
    delta : ndarray, shape (..., 4)
        Regulated contravariant difference ``x - x'``.

    Returns
    -------
    ndarray, shape (..., 4, 4, 4, 4)
    """
    delta = np.asarray(delta)
    low = delta * np.diag(ETA)
    s2 = interval(delta)[..., None, None]
    grad = 2.0 * ETA / s2 ** 2 - 8.0 * low[..., :, None] * low[..., None, :] / s2 ** 3
    k = W * np.einsum("...ma,nb->...mnab", grad, ETA)
    return k - np.swapaxes(k, -4, -3) - np.swapaxes(k, -2, -1) + np.swapaxes(
        np.swapaxes(k, -4, -3), -2, -1
    )
