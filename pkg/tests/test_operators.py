import numpy as np
import pytest

from maxkinetic.gridfn import GridFunction, make_grid
from maxkinetic.models import make_model_A, make_model_B, make_model_C
from maxkinetic.operators import apply_L, apply_gamma, lipschitz_gap
from maxkinetic.spectral import lambda_p


def test_gamma_fixed_point_exponential():
    # e^{-sx} e^{-(1-s)x} = e^{-x}: the elastic gain fixes the exponential
    m = make_model_A(3)
    x = make_grid(2000, 1e-6, 50.0)
    u = GridFunction(x, np.exp(-x))
    g = apply_gamma(m, u)
    assert np.max(np.abs(g.values - u.values)) < 5e-9


def test_gamma_constants():
    m = make_model_C(3, 0.5)
    x = make_grid()
    ones = GridFunction(x, np.ones_like(x))
    zeros = GridFunction(x, np.zeros_like(x))
    assert np.max(np.abs(apply_gamma(m, ones).values - 1.0)) < 1e-12
    assert np.max(np.abs(apply_gamma(m, zeros).values)) < 1e-12


def test_gamma_preserves_origin():
    m = make_model_B(3, "const", 1.0, 1.0)
    x = make_grid()
    u = GridFunction(x, np.exp(-2.0 * x))
    assert apply_gamma(m, u).values[0] == 1.0


def test_gamma_rejects_out_of_ball():
    m = make_model_A(3)
    x = make_grid()
    with pytest.raises(ValueError):
        apply_gamma(m, GridFunction(x, 1.5 * np.exp(-x) + 0.5))


def test_L_power_eigenfunctions():
    x = make_grid()
    for model in (make_model_A(3), make_model_C(3, 0.5),
                  make_model_B(3, "const", 1.0, 1.0)):
        for p in (0.5, 1.0, 2.0, 3.0):
            u = GridFunction(x, x ** p)
            lam = lambda_p(model, p, n_quad=2048)
            lu = apply_L(model, u, n_quad=2048)
            rel = np.abs(lu.values[1:] - lam * x[1:] ** p) / x[1:] ** p
            assert np.max(rel) < 1e-8


def test_L_on_x_squared_window():
    # lambda(2) = 2/3 for the d=3 elastic model
    m = make_model_A(3)
    x = make_grid(400, 1e-6, 10.0)
    lu = apply_L(m, GridFunction(x, x ** 2), n_quad=512)
    assert np.max(np.abs(lu.values - (2.0 / 3.0) * x ** 2)) < 1e-8


def test_L_positivity():
    m = make_model_C(3, 0.5)
    x = make_grid()
    u = GridFunction(x, np.exp(-x) * (0.6 + 0.4 * np.cos(x)))
    lu = apply_L(m, u)
    assert np.min(lu.values) >= 0.0


def test_L_constant():
    m = make_model_A(3)
    x = make_grid()
    lu = apply_L(m, GridFunction(x, np.ones_like(x)))
    assert np.max(np.abs(lu.values - 2.0)) < 1e-12


def test_lipschitz_gap_zero_for_equal_inputs():
    m = make_model_A(3)
    x = make_grid()
    u = GridFunction(x, np.exp(-x))
    gap = lipschitz_gap(m, u, u)
    assert np.max(np.abs(gap.values)) < 1e-14


def test_lipschitz_gap_nonnegative():
    m = make_model_A(3)
    x = make_grid()
    u1 = GridFunction(x, np.exp(-x))
    u2 = GridFunction(x, np.ones_like(x))
    assert np.min(lipschitz_gap(m, u1, u2).values) >= -1e-8


def test_lipschitz_gap_rejects_out_of_ball():
    m = make_model_A(3)
    x = make_grid()
    u = GridFunction(x, np.exp(-x))
    with pytest.raises(ValueError):
        lipschitz_gap(m, u, GridFunction(x, np.full_like(x, 1.5)))
