from typing import Callable, Optional, Tuple, Union

import numpy as np

from ..frames import Family

ArrayLike = Union[float, complex, np.ndarray]

COMPONENT_INDEX = {"rho": 0, "x": 0, "phi": 1, "y": 1, "z": 2}

Kernel = Tuple[Callable[[np.ndarray], np.ndarray], np.ndarray, Optional[float]]


def component_index(name: Union[str, int]) -> int:
    """Map a component label (``rho``/``x``, ``phi``/``y``, ``z``) to 0, 1, 2."""
    if isinstance(name, (int, np.integer)) and 0 <= int(name) < 3:
        return int(name)
    try:
        return COMPONENT_INDEX[str(name).strip().lower()]
    except KeyError:
        raise ValueError(f"unknown field component {name!r}")


def check_pair(alpha: int, beta: int) -> None:
    if alpha not in (1, 2) or beta not in (1, 2):
        raise ValueError("atom indices alpha, beta must be 1 or 2")


class CorrelationTensor:
    """
    Base class for comoving electric-field Wightman tensors.

    ``tensor(u, alpha, beta)[..., i, j]`` is ``<E_i(tau) E_j(tau - u)>`` with
    ``E`` of atom ``alpha`` at the later time, evaluated at a (possibly
    complex) lag. The regulated Wightman function on the real axis is the
    value at ``u - i eps``.
    """

    family: Family
    #: Imaginary period of the correlator in ``u`` (``None`` if aperiodic).
    period: Optional[float] = None

    def tensor(self, u: ArrayLike, alpha: int, beta: int) -> np.ndarray:
        """Full 3x3 tensor at lag ``u``; shape ``u.shape + (3, 3)``."""
        raise NotImplementedError("tensor() must be implemented by subclasses.")

    def poles(self, alpha: int, beta: int) -> np.ndarray:
        """Singularities in the complex lag plane relevant to Fourier transforms."""
        raise NotImplementedError(
            f"{type(self).__name__} has no tractable pole structure"
        )

    def spectral_kernel(self, alpha: int, beta: int) -> Kernel:
        """Return ``(function, poles, period)`` for the residue engine."""
        return (lambda z: self.tensor(z, alpha, beta)), self.poles(alpha, beta), self.period

    def component(self, i, j, alpha: int, beta: int, u: ArrayLike, eps: float = 0.0):
        """Single regulated component at the real lag ``u``."""
        check_pair(alpha, beta)
        if eps < 0:
            raise ValueError("regulator eps must be non-negative")
        lag = np.asarray(u) - 1j * eps
        return self.tensor(lag, alpha, beta)[..., component_index(i), component_index(j)]
