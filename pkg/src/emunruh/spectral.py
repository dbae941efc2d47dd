"""Dissipator coefficients from the spectra of the field correlators.

Pipeline: a :class:`~emunruh.wightman.CorrelationTensor` is transformed at
``+omega`` and ``-omega`` into a :class:`SpectralTensor`, contracted with the
atomic dipoles, and split into the Kossakowski coefficients
``A = (G(w) + G(-w)) / 4`` and ``B = (G(w) - G(-w)) / 4``. Rates are expressed
in units of the static vacuum emission rate ``Gamma0 = |d|^2 omega^3 / (3 pi)``.
"""

import logging
from dataclasses import dataclass, field, fields, replace
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from .errors import SpectralError
from .transforms import fourier_residue
from .wightman.base import CorrelationTensor, component_index

LOGGER = logging.getLogger(__name__)

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))

Polarization = Union[str, Sequence[complex]]


def polarization_vector(spec: Polarization) -> np.ndarray:
    """Unit 3-vector for a named axis (``rho``/``x``, ``phi``/``y``, ``z``) or a vector."""
    if isinstance(spec, str):
        vec = np.zeros(3, dtype=complex)
        vec[component_index(spec)] = 1.0
        return vec
    vec = np.asarray(spec, dtype=complex)
    if vec.shape != (3,):
        raise ValueError("polarization vectors must have three components")
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("polarization vector must be non-zero")
    return vec / norm


@dataclass(frozen=True)
class DipoleConfig:
    """Dipole orientations of the two atoms in their comoving bases.

    Parameters
    ----------
    d1, d2 : array_like
        Complex unit 3-vectors for atoms 1 and 2.
    magnitude : float, optional
        Common dipole magnitude ``|d|``. Defaults to ``1``.
    omega : float, optional
        Transition frequency. Defaults to ``1``.
    """

    d1: np.ndarray
    d2: np.ndarray
    magnitude: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("d1", "d2"):
            vec = np.asarray(getattr(self, name), dtype=complex)
            if vec.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
                raise ValueError(f"{name} must have unit norm")
            object.__setattr__(self, name, vec)
        if not self.magnitude > 0 or not self.omega > 0:
            raise ValueError("dipole magnitude and frequency must be positive")

    @classmethod
    def from_names(cls, pol1: Polarization, pol2: Polarization, **kwargs) -> "DipoleConfig":
        return cls(polarization_vector(pol1), polarization_vector(pol2), **kwargs)

    @property
    def gamma0(self) -> float:
        """Static vacuum emission rate ``|d|^2 omega^3 / (3 pi)``."""
        return self.magnitude ** 2 * self.omega ** 3 / (3.0 * np.pi)

    def vector(self, atom: int) -> np.ndarray:
        if atom not in (1, 2):
            raise ValueError("atom index must be 1 or 2")
        return self.d1 if atom == 1 else self.d2


@dataclass(frozen=True)
class SpectralTensor:
    """Fourier transforms ``G^{(ab)}_{mn}(+-omega)`` of a correlation tensor.

    ``values[s, a - 1, b - 1, m, n]`` with ``s = 0`` for ``+omega`` and
    ``s = 1`` for ``-omega``.
    """

    omega: float
    values: np.ndarray
    family: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (2, 2, 2, 3, 3):
            raise ValueError("spectral values must have shape (2, 2, 2, 3, 3)")
        object.__setattr__(self, "values", values)

    def block(self, alpha: int, beta: int, sign: int = 1) -> np.ndarray:
        """3x3 block at ``sign * omega``."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return self.values[0 if sign > 0 else 1, alpha - 1, beta - 1]

    def matrix(self, sign: int = 1) -> np.ndarray:
        """6x6 matrix ``[[G11, G12], [G21, G22]]`` at ``sign * omega``."""
        return np.block(
            [
                [self.block(1, 1, sign), self.block(1, 2, sign)],
                [self.block(2, 1, sign), self.block(2, 2, sign)],
            ]
        )


def spectral_tensor(correlator: CorrelationTensor, omega: float = 1.0, **residue_options) -> SpectralTensor:
    """Transform all four pair tensors of ``correlator`` at ``+-omega``."""
    values = np.zeros((2, 2, 2, 3, 3), dtype=complex)
    for alpha, beta in PAIRS:
        func, poles, period = correlator.spectral_kernel(alpha, beta)
        for s, w in enumerate((omega, -omega)):
            values[s, alpha - 1, beta - 1] = fourier_residue(
                func, poles, w, period=period, **residue_options
            )
    LOGGER.debug("spectral tensor for %s at omega=%g computed", type(correlator).__name__, omega)
    return SpectralTensor(omega=float(omega), values=values, family=correlator.family.value)


def contract(spectral: SpectralTensor, dipoles: DipoleConfig, alpha: int, beta: int, sign: int = 1) -> complex:
    """``sum_mn conj(d^(alpha)_m) d^(beta)_n G^{(alpha beta)}_{mn}(sign * omega)``."""
    da = dipoles.vector(alpha)
    db = dipoles.vector(beta)
    return complex(np.conj(da) @ spectral.block(alpha, beta, sign) @ db)


@dataclass(frozen=True)
class RateCoefficients:
    """Dissipator coefficients in units of ``Gamma0``.

    ``A1, B1`` belong to atom 1, ``A2, B2`` to atom 2, ``A3, B3`` to the pair
    (1, 2) and ``A4, B4`` to (2, 1).
    """

    A1: float
    A2: float
    A3: float
    A4: float
    B1: float
    B2: float
    B3: float
    B4: float

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            if not np.isfinite(value):
                raise SpectralError(f"rate coefficient {f.name} is not finite")
            object.__setattr__(self, f.name, value)

    def validate(self, tol: float = 1e-8) -> "RateCoefficients":
        """Check same-atom positivity ``A >= |B| >= 0``."""
        scale = tol * max(1.0, abs(self.A1), abs(self.A2))
        for a, b, name in ((self.A1, self.B1, "1"), (self.A2, self.B2, "2")):
            if a < -scale or abs(b) > a + scale:
                raise SpectralError(f"atom {name} violates A >= |B| >= 0 (A={a:.6g}, B={b:.6g})")
        return self

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)])

    def without_cross_terms(self) -> "RateCoefficients":
        return replace(self, A3=0.0, A4=0.0, B3=0.0, B4=0.0)

    def emission_rate(self) -> float:
        """``2 (A1 + A2)``, the decay rate of the GE coherence."""
        return 2.0 * (self.A1 + self.A2)

    @classmethod
    def zeros(cls) -> "RateCoefficients":
        return cls(*([0.0] * 8))


def rate_coefficients(g_plus: np.ndarray, g_minus: np.ndarray, gamma0: float = 1.0 / (3.0 * np.pi), tol: float = 1e-8) -> RateCoefficients:
    """Coefficients from contracted spectra.

    Parameters
    ----------
    g_plus, g_minus : array_like, shape (2, 2)
        ``G^{(ab)}(+omega)`` and ``G^{(ab)}(-omega)`` indexed by ``[a-1, b-1]``.
    gamma0 : float, optional
        Normalisation rate. Defaults to ``1 / (3 pi)``.
    tol : float, optional
        Relative tolerance on imaginary parts.
    """
    gp = np.asarray(g_plus, dtype=complex)
    gm = np.asarray(g_minus, dtype=complex)
    if gp.shape != (2, 2) or gm.shape != (2, 2):
        raise ValueError("contracted spectra must have shape (2, 2)")
    a = 0.25 * (gp + gm) / gamma0
    b = 0.25 * (gp - gm) / gamma0
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
    for k in (0, 1):
        if max(abs(a[k, k].imag), abs(b[k, k].imag)) > tol * scale:
            raise SpectralError("same-atom coefficients have an imaginary part")
    if max(np.max(np.abs(a.imag)), np.max(np.abs(b.imag))) > tol * scale:
        raise SpectralError(
            "cross-atom coefficients are complex for this polarization pair; "
            "the X-state equations need real coefficients"
        )
    # the (1,2) and (2,1) blocks of a Hermitian Kossakowski matrix are conjugate
    if max(abs(a[0, 1] - a[1, 0]), abs(b[0, 1] - b[1, 0])) > max(tol, 1e-6) * scale:
        raise SpectralError("cross-atom coefficients of the pairs (1, 2) and (2, 1) differ")
    return RateCoefficients(
        A1=a[0, 0].real, A2=a[1, 1].real, A3=a[0, 1].real, A4=a[1, 0].real,
        B1=b[0, 0].real, B2=b[1, 1].real, B3=b[0, 1].real, B4=b[1, 0].real,
    ).validate(tol)


@dataclass(frozen=True)
class KossakowskiMatrix:
    """Blocks ``C^{(ab)}_{ij}`` of the Lindblad dissipator."""

    blocks: Dict[Tuple[int, int], np.ndarray] = field(default_factory=dict)

    def block_matrix(self) -> np.ndarray:
        return np.block(
            [
                [self.blocks[(1, 1)], self.blocks[(1, 2)]],
                [self.blocks[(2, 1)], self.blocks[(2, 2)]],
            ]
        )

    def is_positive_semidefinite(self, tol: float = 1e-10) -> bool:
        c = self.block_matrix()
        herm = 0.5 * (c + c.conj().T)
        if np.max(np.abs(c - herm)) > tol * max(1.0, np.max(np.abs(c))):
            return False
        return bool(np.linalg.eigvalsh(herm).min() >= -tol * max(1.0, np.max(np.abs(c))))


def kossakowski(rates: RateCoefficients) -> KossakowskiMatrix:
    """``C_ij = A delta_ij - i B eps_ij3 - A delta_i3 delta_j3`` for each pair."""
    pairs = {
        (1, 1): (rates.A1, rates.B1),
        (2, 2): (rates.A2, rates.B2),
        (1, 2): (rates.A3, rates.B3),
        (2, 1): (rates.A4, rates.B4),
    }
    blocks = {}
    for key, (a, b) in pairs.items():
        block = np.zeros((3, 3), dtype=complex)
        block[0, 0] = block[1, 1] = a
        block[0, 1] = -1j * b
        block[1, 0] = 1j * b
        blocks[key] = block
    return KossakowskiMatrix(blocks)


def rates_for(correlator: CorrelationTensor, dipoles: DipoleConfig, **residue_options) -> RateCoefficients:
    """Full pipeline from a correlator to normalised rate coefficients."""
    spectral = spectral_tensor(correlator, dipoles.omega, **residue_options)
    g_plus = np.zeros((2, 2), dtype=complex)
    g_minus = np.zeros((2, 2), dtype=complex)
    for alpha, beta in PAIRS:
        g_plus[alpha - 1, beta - 1] = contract(spectral, dipoles, alpha, beta, 1)
        g_minus[alpha - 1, beta - 1] = contract(spectral, dipoles, alpha, beta, -1)
    d2 = dipoles.magnitude ** 2
    return rate_coefficients(d2 * g_plus, d2 * g_minus, dipoles.gamma0)
