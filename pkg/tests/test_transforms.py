"""Tests for the residue engine and the quadrature oracle."""

import numpy as np
import pytest

from emunruh.transforms import cauchy_residue, fourier_quadrature, fourier_residue

GAMMA0 = 1.0 / (3.0 * np.pi)


def _static(z):
    return 1.0 / (np.pi ** 2 * np.asarray(z) ** 4)


def _uniform_kernel(a):
    def func(z):
        return (0.5 * a) ** 4 / (np.pi ** 2 * np.sinh(0.5 * a * np.asarray(z)) ** 4)

    return func


def test_cauchy_residue_simple_pole():
    res = cauchy_residue(lambda z: 1.0 / (z - 0.3), 0.3, 0.1, 0.0)
    assert res == pytest.approx(1.0, abs=1e-12)


def test_static_vacuum_spectrum():
    assert fourier_residue(_static, [0.0], 1.0) == pytest.approx(GAMMA0, rel=1e-10)
    assert abs(fourier_residue(_static, [0.0], -1.0)) == 0.0
    assert fourier_residue(_static, [0.0], 2.0) == pytest.approx(8.0 * GAMMA0, rel=1e-10)


def test_near_real_poles_are_snapped():
    """A pole pushed just below the axis still counts as a real pole."""
    assert fourier_residue(_static, [-1e-12j], 1.0) == pytest.approx(GAMMA0, rel=1e-10)
    assert fourier_residue(_static, [-1e-12j], -1.0) == 0.0


def test_periodic_strip_gives_detailed_balance():
    a = 0.8
    func = _uniform_kernel(a)
    period = 2.0 * np.pi / a
    up = fourier_residue(func, [0.0], 1.0, period=period)
    down = fourier_residue(func, [0.0], -1.0, period=period)
    expected = GAMMA0 * (1.0 + a ** 2) / (1.0 - np.exp(-2.0 * np.pi / a))
    assert up == pytest.approx(expected, rel=1e-9)
    assert up / down == pytest.approx(np.exp(2.0 * np.pi / a), rel=1e-9)


def test_tensor_valued_kernels_keep_trailing_shape():
    def func(z):
        return _static(z)[..., None, None] * np.eye(3)

    out = fourier_residue(func, [0.0], 1.0)
    assert out.shape == (3, 3)
    np.testing.assert_allclose(out, GAMMA0 * np.eye(3), atol=1e-12)
    assert fourier_residue(func, [0.0], -1.0).shape == (3, 3)


def test_fourier_residue_rejects_bad_input():
    with pytest.raises(ValueError):
        fourier_residue(_static, [0.0], 0.0)
    with pytest.raises(ValueError):
        fourier_residue(_static, [], 1.0)
    with pytest.raises(ValueError):
        fourier_residue(_static, [0.0], 1.0, period=-1.0)


def test_quadrature_oracle_matches_residues():
    result = fourier_quadrature(_static, 1.0)
    assert result.value == pytest.approx(GAMMA0, rel=1e-4)
    assert len(result.samples) == 4
    # the regulated integral decays like exp(-omega eps)
    assert result.samples[0] == pytest.approx(GAMMA0 * np.exp(-0.4), rel=1e-6)
    assert abs(fourier_quadrature(_static, -1.0).value) < 1e-6


def test_quadrature_cross_correlator_with_real_poles():
    L = 1.2

    def cross(z):
        return 1.0 / (np.pi ** 2 * (L ** 2 - z ** 2) ** 2)

    expected = (np.sin(L) / L ** 3 - np.cos(L) / L ** 2) / np.pi
    assert fourier_residue(cross, [-L, L], 1.0) == pytest.approx(expected, rel=1e-9)
    oracle = fourier_quadrature(cross, 1.0, breakpoints=[L])
    assert oracle.value == pytest.approx(expected, rel=1e-4, abs=1e-6)


def test_quadrature_validates_regulators():
    with pytest.raises(ValueError):
        fourier_quadrature(_static, 1.0, eps_list=(0.2, 0.1))
    with pytest.raises(ValueError):
        fourier_quadrature(_static, 1.0, eps_list=(0.1, 0.2, 0.05))
    with pytest.raises(ValueError):
        fourier_quadrature(_static, 0.0)
