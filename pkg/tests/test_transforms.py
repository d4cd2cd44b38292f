import numpy as np
import pytest
from scipy.integrate import quad, simpson

from maxkinetic.gridfn import GridFunction, make_grid
from maxkinetic.transforms import (maxwellian_density,
                                   radial_inverse_fourier_3d)


def test_maxwellian_round_trip():
    v = np.linspace(0.0, 6.0, 121)
    dist = radial_inverse_fourier_3d(lambda s: np.exp(-s), v)
    assert np.max(np.abs(dist.F - maxwellian_density(v))) < 1e-10
    assert dist.F[0] == pytest.approx((4.0 * np.pi) ** -1.5, abs=1e-12)


def test_mass_normalization():
    v = np.linspace(0.0, 10.0, 501)
    dist = radial_inverse_fourier_3d(lambda s: np.exp(-s), v)
    assert dist.mass == pytest.approx(1.0, abs=1e-4)


def test_second_moment_consistency():
    v = np.linspace(0.0, 12.0, 601)
    dist = radial_inverse_fourier_3d(lambda s: np.exp(-s), v)
    second = simpson(4.0 * np.pi * dist.F * v ** 4, x=v)
    # -2 d psi'(0) with psi = e^{-x} in d = 3
    assert second == pytest.approx(6.0, rel=1e-2)


def test_oscillatory_quadrature_against_adaptive_oracle():
    # independent check: scipy's sin-weighted adaptive rule
    psi = lambda s: 1.0 / (1.0 + s) ** 2
    for v in (0.7, 2.3):
        direct = quad(lambda k: k * psi(k * k), 0.0, 200.0,
                      weight="sin", wvar=v, limit=400)[0]
        expected = direct / (2.0 * np.pi ** 2 * v)
        got = radial_inverse_fourier_3d(psi, np.array([0.0, v])).F[1]
        assert got == pytest.approx(expected, rel=1e-6)


def test_stable_law_positivity():
    # e^{-sqrt(x)} is the characteristic function of a heavy-tailed density
    v = np.linspace(0.0, 8.0, 161)
    dist = radial_inverse_fourier_3d(lambda s: np.exp(-np.sqrt(s)), v)
    assert np.min(dist.F) >= -1e-6
    assert dist.F[0] > 0.0


def test_grid_function_input():
    x = make_grid(800, 1e-6, 50.0)
    psi = GridFunction(x, np.exp(-x))
    v = np.linspace(0.0, 5.0, 51)
    dist = radial_inverse_fourier_3d(psi, v)
    assert np.max(np.abs(dist.F - maxwellian_density(v))) < 1e-6


def test_input_validation():
    with pytest.raises(ValueError):
        radial_inverse_fourier_3d(lambda s: 0.5 * np.exp(-s),
                                  np.linspace(0, 5, 11))
    with pytest.raises(ValueError):
        radial_inverse_fourier_3d(lambda s: np.ones_like(np.asarray(s)),
                                  np.linspace(0, 5, 11))
    with pytest.raises(ValueError):
        radial_inverse_fourier_3d(lambda s: np.exp(-s),
                                  np.array([-1.0, 2.0]))
