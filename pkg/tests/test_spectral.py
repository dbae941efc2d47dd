"""Tests for spectral tensors and dissipator coefficients."""

from functools import lru_cache

import numpy as np
import pytest

from emunruh.errors import SpectralError
from emunruh.frames import KinematicParams
from emunruh.spectral import (
    DipoleConfig,
    RateCoefficients,
    contract,
    kossakowski,
    polarization_vector,
    rate_coefficients,
    rates_for,
    spectral_tensor,
)
from emunruh.transforms import fourier_quadrature
from emunruh.wightman import (
    BoostChainCorrelator,
    CircularUltraCorrelator,
    StaticVacuumCorrelator,
    ThermalCorrelator,
    correlator_for,
)

ZZ = DipoleConfig.from_names("z", "z")


def _rates(family, a, L, pol1="z", pol2="z"):
    params = KinematicParams(family, a=a, L=L)
    return rates_for(correlator_for(params), DipoleConfig.from_names(pol1, pol2))


def test_polarization_vector():
    np.testing.assert_array_equal(polarization_vector("phi"), [0, 1, 0])
    np.testing.assert_allclose(polarization_vector([3.0, 0.0, 4.0]), [0.6, 0.0, 0.8])
    with pytest.raises(ValueError):
        polarization_vector([0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        DipoleConfig(np.array([1.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))


def test_static_vacuum_rates(static_rates):
    rates = rates_for(StaticVacuumCorrelator(1.0), ZZ)
    np.testing.assert_allclose(rates.as_array(), static_rates.as_array(), rtol=1e-8)
    assert rates.emission_rate() == pytest.approx(1.0)


def test_dipole_magnitude_cancels_in_normalised_rates(static_rates):
    dipoles = DipoleConfig.from_names("z", "z", magnitude=2.5)
    rates = rates_for(StaticVacuumCorrelator(1.0), dipoles)
    np.testing.assert_allclose(rates.as_array(), static_rates.as_array(), rtol=1e-8)


@pytest.mark.parametrize("pol", ["z", "phi", "rho"])
def test_uniform_same_atom_rates(pol):
    a = 1.0
    rates = _rates("uniform", a, 1.0, pol, pol)
    assert rates.A1 == pytest.approx(0.25 * (1 + a ** 2) / np.tanh(np.pi / a), rel=1e-7)
    assert rates.B1 == pytest.approx(0.25 * (1 + a ** 2), rel=1e-7)
    assert rates.A2 == pytest.approx(rates.A1, rel=1e-10)
    assert rates.A3 == pytest.approx(rates.A4, rel=1e-8, abs=1e-12)


def test_thermal_same_atom_rates():
    a = 0.8
    rates = _rates("thermal", a, 1.0)
    assert rates.A1 == pytest.approx(0.25 / np.tanh(np.pi / a), rel=1e-8)
    assert rates.B1 == pytest.approx(0.25, rel=1e-8)


def test_thermal_spectra_satisfy_kms():
    a = 1.0
    spectral = spectral_tensor(correlator_for(KinematicParams("thermal", a=a, L=1.0)))
    for pair in ((1, 1), (1, 2)):
        up = spectral.block(*pair, 1)[2, 2]
        down = spectral.block(*pair, -1)[2, 2]
        assert (up / down).real == pytest.approx(np.exp(2.0 * np.pi / a), rel=1e-6)


def test_circular_spectrum_is_not_thermal():
    a = 1.0
    spectral = spectral_tensor(CircularUltraCorrelator(a, 1.0))
    ratio = (spectral.block(1, 1, 1)[2, 2] / spectral.block(1, 1, -1)[2, 2]).real
    assert abs(ratio / np.exp(2.0 * np.pi / a) - 1.0) > 1e-3


def test_circular_rates_reduce_to_static_at_small_acceleration(static_rates):
    rates = _rates("circular", 1e-3, 1.0)
    np.testing.assert_allclose(rates.as_array(), static_rates.as_array(), rtol=1e-5)


def test_circular_rates_are_valid():
    rates = _rates("circular", 1.0, 1.0)
    rates.validate()
    assert rates.A1 > rates.B1 > 0
    assert rates.A3 == pytest.approx(rates.A4, rel=1e-8)
    assert kossakowski(rates).is_positive_semidefinite()


def test_complex_cross_coefficients_are_rejected():
    with pytest.raises(SpectralError):
        _rates("circular", 1.0, 1.0, "rho", "phi")


ORACLE_COMPONENTS = ((2, 2), (0, 0), (1, 1), (0, 2))


def _oracle_setup(family, a, L):
    """Correlator for the residue engine and a real-axis evaluator for quadrature."""
    if family == "circular":
        corr = CircularUltraCorrelator(a, L)
        return corr, corr.tensor, ()
    if family == "uniform":
        corr = BoostChainCorrelator(KinematicParams("uniform", a=a, L=L))
        # past a u = 8 the correlator has dropped by e^-16 while the lab-frame
        # differences start to lose digits
        cutoff = 8.0 / a

        def clipped(z, alpha, beta):
            if abs(z.real) > cutoff:
                return np.zeros((3, 3), dtype=complex)
            return corr.tensor(z, alpha, beta)

        return corr, clipped, (cutoff,)
    corr = ThermalCorrelator(a / (2.0 * np.pi), L, images=50)

    def images(z, alpha, beta):
        return corr.image_sum(z, alpha, beta, -corr.images, corr.images)

    return corr, images, ()


@pytest.mark.parametrize("L", [0.5, 1.0])
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("family", ["circular", "uniform", "thermal"])
def test_residues_match_quadrature_oracle(family, a, L):
    corr, evaluate, extra_breaks = _oracle_setup(family, a, L)
    spectral = spectral_tensor(corr)
    for pair in ((1, 1), (1, 2)):
        poles = corr.poles(*pair)
        breaks = [p.real for p in poles if abs(p.imag) < 1e-9 and abs(p) > 0] + list(extra_breaks)
        scale = max(np.abs(spectral.block(*pair, s)).max() for s in (1, -1))
        cached = lru_cache(maxsize=None)(lambda z, pair=pair: evaluate(z, *pair))
        for i, j in ORACLE_COMPONENTS:
            for sign in (1, -1):

                def func(z, i=i, j=j):
                    return cached(complex(z))[i, j]

                oracle = fourier_quadrature(func, float(sign), breakpoints=breaks)
                assert abs(oracle.value - spectral.block(*pair, sign)[i, j]) <= 1e-4 * scale, (pair, i, j, sign)


def test_rate_coefficients_checks():
    gp = np.array([[1.0, 0.3], [0.3, 1.0]]) / (3 * np.pi)
    gm = np.array([[0.1, 0.05], [0.05, 0.1]]) / (3 * np.pi)
    rates = rate_coefficients(gp, gm)
    assert rates.A1 == pytest.approx(0.275)
    assert rates.B3 == pytest.approx(0.0625)
    with pytest.raises(SpectralError):
        rate_coefficients(gp + np.diag([0.1j, 0.0]), gm)
    with pytest.raises(SpectralError):
        rate_coefficients(gp + np.array([[0, 0.1j], [-0.1j, 0]]), gm)
    with pytest.raises(SpectralError):
        rate_coefficients(gp + np.array([[0, 0.1], [0, 0]]), gm)
    with pytest.raises(ValueError):
        rate_coefficients(gp[0], gm[0])


def test_rate_validation():
    with pytest.raises(SpectralError):
        RateCoefficients(0.1, 0.25, 0.0, 0.0, 0.3, 0.25, 0.0, 0.0).validate()
    with pytest.raises(SpectralError):
        RateCoefficients(np.nan, 0.25, 0.0, 0.0, 0.0, 0.25, 0.0, 0.0)
    zero = RateCoefficients.zeros()
    assert zero.emission_rate() == 0.0


def test_kossakowski_blocks(static_rates):
    c = kossakowski(static_rates)
    assert c.is_positive_semidefinite()
    np.testing.assert_allclose(c.blocks[(1, 1)][:2, :2], 0.25 * np.array([[1, -1j], [1j, 1]]))
    assert c.blocks[(1, 2)][2, 2] == 0
    broken = RateCoefficients(0.25, 0.25, 0.4, 0.4, 0.25, 0.25, 0.4, 0.4)
    assert not kossakowski(broken).is_positive_semidefinite()
    assert static_rates.without_cross_terms().A3 == 0.0


def test_contract_static_vacuum():
    spectral = spectral_tensor(StaticVacuumCorrelator(1.0), omega=1.0)
    gamma0 = 1.0 / (3.0 * np.pi)
    assert contract(spectral, ZZ, 1, 1, sign=1) == pytest.approx(gamma0, rel=1e-8)
    assert abs(contract(spectral, ZZ, 1, 1, sign=-1)) < 1e-10
    cross = (np.sin(1.0) - np.cos(1.0)) / np.pi
    assert contract(spectral, ZZ, 1, 2, sign=1) == pytest.approx(cross, rel=1e-8)
