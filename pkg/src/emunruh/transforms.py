"""Fourier transforms of regulated Wightman functions.

``G(omega) = int du exp(i omega u) G(u - i eps)`` in the limit ``eps -> 0``.

Two independent evaluations are provided:

* :func:`fourier_residue` closes the contour around the singularities of the
  correlator and sums residues obtained by trapezoidal Cauchy quadrature on
  small circles. Poles on the real axis sit at ``+i eps`` and are therefore
  enclosed for ``omega > 0`` only. Correlators that are periodic in
  imaginary lag (uniform acceleration, thermal baths) are handled with the
  strip identity ``(1 - exp(-omega beta)) G(omega) = 2 pi i sum Res`` over
  poles with ``0 <= Im u < beta``.
* :func:`fourier_quadrature` integrates along the real axis at a sequence of
  finite regulators and extrapolates to ``eps = 0``.
"""

import logging
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import ResidueConvergenceError

LOGGER = logging.getLogger(__name__)

IMAG_TOL = 1e-9


def _classify(poles: np.ndarray) -> np.ndarray:
    """Snap near-real roots onto the real axis and drop duplicates."""
    poles = np.atleast_1d(np.asarray(poles, dtype=complex))
    snapped = np.where(
        np.abs(poles.imag) <= IMAG_TOL * np.maximum(1.0, np.abs(poles)),
        poles.real + 0j,
        poles,
    )
    unique = []
    for p in snapped:
        if all(abs(p - q) > 1e-9 * max(1.0, abs(p)) for q in unique):
            unique.append(p)
    return np.array(unique, dtype=complex)


def _kms_factor(omega: float, period: float) -> float:
    """``1 / (1 - exp(-omega * period))`` without overflow."""
    x = omega * period
    if x < -700.0:
        return -np.exp(x)
    return -1.0 / np.expm1(-x)


def cauchy_residue(
    func: Callable[[np.ndarray], np.ndarray],
    z0: complex,
    radius: float,
    omega: float,
    nodes: int = 64,
) -> np.ndarray:
    """Residue of ``exp(i omega z) func(z)`` at ``z0`` by the trapezoid rule.

    ``func`` is evaluated on a vector of nodes and may return trailing
    dimensions (e.g. a 3x3 tensor per node).
    """
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    ring = radius * np.exp(1j * theta)
    z = z0 + ring
    values = np.asarray(func(z))
    weight = np.exp(1j * omega * z) * ring / nodes
    weight = weight.reshape((nodes,) + (1,) * (values.ndim - 1))
    return (values * weight).sum(axis=0)


def _converged_residue(func, z0, radius, omega, nodes, rtol, max_refinements):
    for _ in range(max_refinements + 1):
        coarse = cauchy_residue(func, z0, radius, omega, nodes)
        fine = cauchy_residue(func, z0, radius, omega, 2 * nodes)
        scale = np.max(np.abs(fine))
        if np.max(np.abs(fine - coarse)) <= rtol * scale + 1e-300:
            return fine
        LOGGER.debug("residue at %s not converged at radius %.3g; shrinking", z0, radius)
        radius *= 0.5
    raise ResidueConvergenceError(
        f"Cauchy quadrature at pole {z0:.6g} failed to converge down to radius {radius:.3g}"
    )


def fourier_residue(
    func: Callable[[np.ndarray], np.ndarray],
    poles: Sequence[complex],
    omega: float,
    *,
    period: Optional[float] = None,
    nodes: int = 64,
    max_radius: float = 0.5,
    rtol: float = 1e-8,
    max_refinements: int = 6,
) -> np.ndarray:
    """Fourier transform of a correlator from its singularities.

    Parameters
    ----------
    func : callable
        Vectorised evaluator of the correlator at complex lags.
    poles : sequence of complex
        All singularities of ``func`` (for periodic correlators: those of a
        single image, the periodic copies are implied).
    omega : float
        Non-zero frequency.
    period : float or None, optional
        Imaginary period ``beta`` of ``func`` in ``u``, if any.
    nodes : int, optional
        Trapezoid nodes per circle. Defaults to ``64``; convergence is checked
        against twice as many.
    max_radius : float, optional
        Upper bound on the circle radius. Defaults to ``0.5``.
    rtol : float, optional
        Relative tolerance of the node-doubling check. Defaults to ``1e-8``.
    max_refinements : int, optional
        Number of radius halvings before giving up. Defaults to ``6``.

    Returns
    -------
    complex or ndarray
        Transform with the trailing shape of ``func``'s output.
    """
    if omega == 0 or not np.isfinite(omega):
        raise ValueError("omega must be finite and non-zero")
    poles = _classify(poles)
    if poles.size == 0:
        raise ValueError("at least one pole is required")

    neighbours = poles
    if period is not None:
        if not period > 0:
            raise ValueError("period must be positive")
        neighbours = np.concatenate([poles, poles + 1j * period, poles - 1j * period])
        enclosed = [p for p in poles if -IMAG_TOL <= p.imag < period - IMAG_TOL * max(1.0, period)]
        prefactor = 2j * np.pi * _kms_factor(omega, period)
    elif omega > 0:
        enclosed = [p for p in poles if p.imag >= 0.0]
        prefactor = 2j * np.pi
    else:
        enclosed = [p for p in poles if p.imag < 0.0]
        prefactor = -2j * np.pi

    total = 0.0
    for p in enclosed:
        others = np.abs(neighbours - p)
        others = others[others > 0.0]
        distance = others.min() if others.size else np.inf
        if distance < 1e-12:
            raise ResidueConvergenceError(f"poles coincide near {p:.6g}")
        radius = min(max_radius, 0.1 * distance)
        res = _converged_residue(func, p, radius, omega, nodes, rtol, max_refinements)
        LOGGER.debug("pole %s: radius %.3g, residue magnitude %.3g", p, radius, np.max(np.abs(res)))
        total = total + res
    if not enclosed:
        sample = np.asarray(func(np.array([poles[0] + max_radius])))
        total = np.zeros(sample.shape[1:], dtype=complex)
    return prefactor * total


@dataclass(frozen=True)
class QuadratureResult:
    """Extrapolated Fourier integral.

    Attributes
    ----------
    value : complex
        Estimate at ``eps = 0``.
    error : float
        Difference between the last two extrapolation orders.
    reliable : bool
        ``False`` if the extrapolation sequence was not monotonically
        converging or any quadrature reported a problem.
    samples : tuple of complex
        Integrals at the individual regulators.
    """

    value: complex
    error: float
    reliable: bool
    samples: Tuple[complex, ...]


def _neville_to_zero(xs: Sequence[float], ys: Sequence[complex]):
    """Successive polynomial extrapolations to ``x = 0`` using the finest points."""
    p = [complex(y) for y in ys]
    n = len(xs)
    estimates = [p[-1]]
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (xs[i] * p[i + 1] - xs[i + k] * p[i]) / (xs[i] - xs[i + k])
        estimates.append(p[n - 1 - k])
    return estimates


def _half_line(f, weight, w, edges, limit) -> Tuple[float, bool]:
    total = 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            total += quad(f, lo, hi, weight=weight, wvar=w, limit=limit, epsabs=1e-14, epsrel=1e-12)[0]
        total += quad(f, edges[-1], np.inf, weight=weight, wvar=w, limlst=200, epsabs=1e-14)[0]
    return total, not any(issubclass(c.category, IntegrationWarning) for c in caught)


def _regulated_transform(func, omega, eps, edges, limit) -> Tuple[complex, bool]:
    @lru_cache(maxsize=None)
    def g(u: float) -> complex:
        return complex(func(u - 1j * eps))

    def even(u):
        return g(u) + g(-u)

    def odd(u):
        return g(u) - g(-u)

    w = abs(omega)
    sign = 1.0 if omega > 0 else -1.0
    parts = []
    for fn, weight in ((even, "cos"), (odd, "sin")):
        re, ok_re = _half_line(lambda u: fn(u).real, weight, w, edges, limit)
        im, ok_im = _half_line(lambda u: fn(u).imag, weight, w, edges, limit)
        parts.append((complex(re, im), ok_re and ok_im))
    (cos_part, ok_c), (sin_part, ok_s) = parts
    return cos_part + 1j * sign * sin_part, ok_c and ok_s


def fourier_quadrature(
    func: Callable[[complex], complex],
    omega: float,
    eps_list: Sequence[float] = (0.4, 0.2, 0.1, 0.05),
    *,
    breakpoints: Sequence[float] = (),
    window: Optional[float] = None,
    limit: int = 400,
) -> QuadratureResult:
    """Fourier transform by direct integration and extrapolation in ``eps``.

    Each regulated integral is split into even and odd halves on
    ``[0, inf)``; the finite window between breakpoints is integrated with
    QUADPACK's oscillatory rule and the remainder with its Fourier-tail rule.
    The exact regulator dependence is ``exp(-omega eps)``, so polynomial
    extrapolation in ``eps`` converges quickly.

    Parameters
    ----------
    func : callable
        Scalar correlator component at a complex lag.
    omega : float
        Non-zero frequency.
    eps_list : sequence of float, optional
        Strictly decreasing positive regulators, at least three. They must
        stay below the distance of the nearest lower-half-plane singularity.
    breakpoints : sequence of float, optional
        Real-axis locations of near-singular peaks (real poles).
    window : float or None, optional
        End of the finite window. Defaults to ``max(40, 4 max|breakpoint|)``.
    limit : int, optional
        Subinterval limit passed to :func:`scipy.integrate.quad`.
    """
    if omega == 0:
        raise ValueError("omega must be non-zero")
    eps = [float(e) for e in eps_list]
    if len(eps) < 3:
        raise ValueError("at least three regulators are required")
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("regulators must be positive and strictly decreasing")

    cuts = sorted({abs(float(b)) for b in breakpoints if abs(float(b)) > 0})
    if window is None:
        window = max(40.0, 4.0 * (cuts[-1] if cuts else 0.0))
    edges = [0.0] + [c for c in cuts if c < window] + [float(window)]

    samples = []
    ok = True
    for e in eps:
        value, good = _regulated_transform(func, omega, e, edges, limit)
        samples.append(value)
        ok = ok and good

    estimates = _neville_to_zero(eps, samples)
    steps = [abs(b - a) for a, b in zip(estimates, estimates[1:])]
    floor = 1e-9 * max(abs(estimates[-1]), 1e-300)
    monotone = all(b <= a + floor for a, b in zip(steps, steps[1:]))
    reliable = ok and monotone
    if not reliable:
        LOGGER.warning(
            "quadrature extrapolation at omega=%g is unreliable (monotone=%s, quad ok=%s)",
            omega,
            monotone,
            ok,
        )
    return QuadratureResult(
        value=estimates[-1],
        error=steps[-1],
        reliable=reliable,
        samples=tuple(samples),
    )
