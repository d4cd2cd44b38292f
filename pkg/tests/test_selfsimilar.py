import numpy as np
import pytest

from maxkinetic.evolution import evolve, rescale
from maxkinetic.gridfn import GridFunction, make_grid
from maxkinetic.models import make_model_A, make_model_C
from maxkinetic.selfsimilar import (check_profile, fixed_point_residual,
                                    gamma_mu, solve_profile)


def test_gamma_mu_zero_rate_is_plain_gain():
    m = make_model_A(3)
    x = make_grid(1000, 1e-6, 50.0)
    w = GridFunction(x, np.exp(-x))
    out = gamma_mu(m, w, 0.0)
    assert np.max(np.abs(out.values - np.exp(-x))) < 2e-8


def test_gamma_mu_fixes_constant_one():
    m = make_model_C(3, 0.5)
    x = make_grid()
    ones = GridFunction(x, np.ones_like(x))
    for mu in (-0.3, 0.0, 0.4):
        out = gamma_mu(m, ones, mu)
        assert np.max(np.abs(out.values - 1.0)) < 1e-10


def test_solve_profile_model_A_is_exponential():
    prof = solve_profile(make_model_A(3), 1.0,
                         x=make_grid(2000, 1e-6, 50.0))
    assert prof.converged
    assert prof.mu_star == pytest.approx(0.0, abs=1e-12)
    assert np.max(np.abs(prof.profile.values
                         - np.exp(-prof.profile.x))) < 1e-8
    assert prof.residual < 1e-8


def test_solve_profile_model_C():
    prof = solve_profile(make_model_C(3, 0.5), 1.0,
                         x=make_grid(2000, 1e-6, 50.0))
    assert prof.converged
    assert prof.mu_star == pytest.approx(-0.1875, abs=1e-12)
    assert np.all(np.diff(prof.profile.values) <= 1e-12)
    assert fixed_point_residual(make_model_C(3, 0.5), prof) < 1e-7


def test_solve_profile_infinite_energy_order():
    prof = solve_profile(make_model_A(3), 0.5)
    assert prof.converged
    assert prof.mu_star == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert np.max(np.abs(prof.profile.values)) <= 1.0 + 1e-12


def test_solve_profile_validation():
    with pytest.raises(ValueError):
        solve_profile(make_model_A(3), 1.5)
    with pytest.raises(ValueError):
        solve_profile(make_model_A(3), 0.0)
    # overcritical thermostat pushes the mu-minimizer below 1
    from maxkinetic.models import make_model_B
    hot = make_model_B(3, "const", theta=3.0, m=1.0)
    with pytest.raises(ValueError):
        solve_profile(hot, 1.0)


def test_picard_iterates_stay_in_ball():
    prof = solve_profile(make_model_C(3, 0.5), 1.0, max_iter=40)
    assert np.max(np.abs(prof.profile.values)) <= 1.0 + 1e-12
    assert prof.profile.values[0] == 1.0


def test_uniqueness_two_starts():
    m = make_model_C(3, 0.5)
    x = make_grid(600, 1e-6, 50.0)
    a = solve_profile(m, 1.0, x=x)
    smooth = np.exp(-x) * (1.0 + np.tanh(0.3 * x) * 0.05)
    smooth = np.clip(smooth, 0.0, 1.0)
    smooth[0] = 1.0
    b = solve_profile(m, 1.0, x=x, w0=GridFunction(x, smooth))
    assert np.max(np.abs(a.profile.values - b.profile.values)) < 1e-8


def test_geometric_convergence_recorded():
    prof = solve_profile(make_model_C(3, 0.5), 1.0)
    tail = prof.rates[-5:]
    assert all(r < 1.0 for r in tail)
    assert max(tail) - min(tail) < 0.2


def test_check_profile_green_for_model_C():
    prof = solve_profile(make_model_C(3, 0.5), 1.0,
                         x=make_grid(2000, 1e-6, 50.0))
    report = check_profile(prof)
    assert report["all_ok"], report
    assert report["contact_order_value"] == pytest.approx(2.0, abs=0.15)


def test_check_profile_negative_control():
    prof = solve_profile(make_model_A(3), 1.0)
    vals = np.array(prof.profile.values)
    vals[50] += 0.01
    prof.profile = GridFunction(prof.profile.x, vals)
    prof.reduced_profile = prof.profile
    report = check_profile(prof)
    assert not report["monotone"]
    assert not report["all_ok"]


def test_profile_consistent_with_evolution():
    # evolving the solved profile and rescaling must reproduce it
    m = make_model_C(3, 0.5)
    x = make_grid(600, 1e-6, 2000.0)
    prof = solve_profile(m, 1.0, x=x)
    traj = evolve(m, prof.profile, 10.0, 0.01)
    back = rescale(traj.final, prof.mu_star, 10.0)
    window = x <= 10.0
    assert np.max(np.abs(back.values[window]
                         - prof.profile.values[window])) < 5e-3
