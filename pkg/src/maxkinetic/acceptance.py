"""Verification suite: golden-value and property checks runnable as one batch.

Each check returns (name, ok, detail).  The same list backs the CLI
`verify` command and the acceptance tests, so CI and the command line
agree on what "green" means.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .evolution import (contraction_bound_ok, contraction_metric, evolve,
                        rescale)
from .gridfn import GridFunction, make_grid
from .kernels import AffineMap
from .models import make_atomic_model, make_model_A, make_model_C
from .moments import moment_recursion
from .operators import apply_L, apply_gamma, lipschitz_gap
from .selfsimilar import check_profile, solve_profile
from .spectral import (classify, find_p0, lambda_p, mu_p, tail_root,
                       theta_star)
from .transforms import maxwellian_density, radial_inverse_fourier_3d

FINE_GRID = dict(m=2000, x_min=1e-6, x_max=50.0)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def _res(name, ok, detail):
    return CheckResult(name=name, ok=bool(ok), detail=detail)


@lru_cache(maxsize=None)
def _model_A():
    return make_model_A(3, "const")


@lru_cache(maxsize=None)
def _model_C():
    return make_model_C(3, 0.5)


@lru_cache(maxsize=None)
def _profile_A():
    x = make_grid(**FINE_GRID)
    return solve_profile(_model_A(), 1.0, x=x)


@lru_cache(maxsize=None)
def _profile_C():
    x = make_grid(**FINE_GRID)
    return solve_profile(_model_C(), 1.0, x=x)


def check_spectral_golden():
    """lambda(p) = 2/(p+1) for the d=3 elastic model, plus minimizer and class."""
    model = _model_A()
    errs = [abs(lambda_p(model, p) - 2.0 / (p + 1.0))
            for p in (0.5, 1.0, 2.0, 3.0, 5.0)]
    mu_err = max(abs(mu_p(model, 2.0) + 1.0 / 6.0),
                 abs(mu_p(model, 3.0) + 1.0 / 6.0))
    p0, _ = find_p0(model)
    p0_err = abs(p0 - (1.0 + np.sqrt(2.0)))
    tag = classify(model)
    ok = max(errs) < 1e-10 and mu_err < 1e-10 and p0_err < 1e-6 and tag == "b"
    return _res("spectral_golden_elastic",
                ok,
                f"max lambda err {max(errs):.2e}, mu err {mu_err:.2e}, "
                f"p0 err {p0_err:.2e}, class {tag}")


def check_theta_star():
    """Thermostat coupling threshold against its closed forms."""
    t1 = theta_star(3, "const", 1.0)
    # closed form for the constant kernel: numerator 1/2, denominator
    # beta/2 + (1/beta)(u^2/2 ln u - u^2/4) evaluated between 1-beta and 1
    def exact(m):
        beta = 4.0 * m / (1.0 + m) ** 2
        r = 1.0 - beta
        upper = -0.25
        lower = 0.5 * r * r * np.log(r) - 0.25 * r * r if r > 0.0 else 0.0
        return 0.5 / (0.5 * beta + (upper - lower) / beta)

    t2 = theta_star(3, "const", 0.5)
    e1 = abs(t1 - 2.0)
    e2 = abs(t2 - exact(0.5))
    ok = e1 < 1e-8 and e2 < 1e-4
    return _res("thermostat_threshold", ok,
                f"m=1 err {e1:.2e}, m=0.5 -> {t2:.6f} err {e2:.2e}")


def check_model_C_spectral():
    """Inelastic e=0.5 spectral values, tail order, and moment blow-up."""
    model = _model_C()
    mu1_err = abs(mu_p(model, 1.0) + 0.1875)
    s = tail_root(model, 1.0)
    table = moment_recursion(model, 5)
    m2_err = abs(table.m_values[2] - 9.0 / 7.0)
    d5 = table.denominators[5]
    m5_infinite = not table.finite[5]
    ok = (mu1_err < 1e-10 and s is not None and 4.1 < s < 4.2
          and m2_err < 1e-8 and d5 < 0.0 and m5_infinite)
    return _res("inelastic_spectral_and_moments", ok,
                f"mu(1) err {mu1_err:.2e}, s* {s}, m2 err {m2_err:.2e}, "
                f"D(5) {d5:.4f}, m5 infinite {m5_infinite}")


def check_stationary_evolution():
    """The elastic fixed point stays put and conserves the energy slope."""
    model = _model_A()
    x = make_grid(**FINE_GRID)
    u0 = GridFunction(x, np.exp(-x))
    traj = evolve(model, u0, 10.0, 0.01)
    drift = float(np.max(np.abs(traj.final.values - u0.values)))

    v0 = GridFunction(x, np.exp(-x) * (1.0 + 0.5 * x))
    traj2 = evolve(model, v0, 10.0, 0.01, snapshot_every=250)
    slopes = [(1.0 - s.values[1]) / s.x[1] for s in traj2.snapshots]
    slope_err = max(abs(sl - 0.5) for sl in slopes)
    ok = drift < 1e-6 and slope_err < 1e-4
    return _res("stationary_fixed_point", ok,
                f"drift {drift:.2e}, slope err {slope_err:.2e}")


def check_profile_exactness():
    """The elastic order-1 profile is exp(-x), with the property report green."""
    prof = _profile_A()
    err = float(np.max(np.abs(prof.profile.values - np.exp(-prof.profile.x))))
    report = check_profile(prof)
    ok = err < 1e-8 and prof.residual < 1e-8 and report["all_ok"]
    return _res("profile_solver_exactness", ok,
                f"sup err {err:.2e}, residual {prof.residual:.2e}, "
                f"report {report}")


def check_selfsimilar_asymptotics():
    """Evolved inelastic data approach the solved profile in the rescaled
    frame, at the predicted contraction rate."""
    model = _model_C()
    prof = _profile_C()
    mu1 = float(mu_p(model, 1.0))
    x = make_grid(1000, 1e-6, 5000.0)
    u0 = GridFunction(x, np.exp(-x))
    traj = evolve(model, u0, 30.0, 0.01, snapshot_every=200)

    scaled = rescale(traj.final, mu1, 30.0)
    y = np.linspace(0.0, 10.0, 400)
    sup_err = float(np.max(np.abs(scaled(y) - prof.profile(y))))

    # exact self-similar solution psi(x e^{mu t}) as the comparison partner
    rate_pred = 1.5 * (mu1 - float(mu_p(model, 1.5)))
    t_fit, metric = [], []
    for t, snap in zip(traj.times, traj.snapshots):
        us = np.asarray(prof.profile(snap.x * np.exp(mu1 * t)))
        d = np.abs(snap.values[1:] - us[1:]) / snap.x[1:] ** 1.5
        t_fit.append(t)
        metric.append(float(np.max(d)))
    t_fit = np.asarray(t_fit)
    metric = np.asarray(metric)
    half = len(t_fit) // 2
    rate_fit = -np.polyfit(t_fit[half:], np.log(metric[half:]), 1)[0]
    rate_ok = abs(rate_fit - rate_pred) <= 0.25 * rate_pred
    ok = sup_err < 5e-3 and rate_ok
    return _res("selfsimilar_asymptotics", ok,
                f"sup err {sup_err:.2e}, rate {rate_fit:.4f} vs "
                f"{rate_pred:.4f}")


def check_contraction():
    """Random unit-ball pairs contract no slower than e^{-t(1-lambda(1))}."""
    model = _model_C()
    rng = np.random.default_rng(20260826)
    x = make_grid()
    ok = True
    worst = ""
    for i in range(5):
        a, b = rng.uniform(0.6, 2.0, size=2)
        u1 = GridFunction(x, np.exp(-a * x))
        u2 = GridFunction(x, np.exp(-b * x))
        t1 = evolve(model, u1, 3.0, 0.01, snapshot_every=50)
        t2 = evolve(model, u2, 3.0, 0.01, snapshot_every=50)
        if not contraction_bound_ok(model, t1, t2, 1.0):
            ok = False
            worst = f"pair {i} (a={a:.3f}, b={b:.3f}) violates the bound"
            break
    return _res("contraction_bound", ok, worst or "5 random pairs within bound")


def _random_ball_function(rng, x):
    """Smooth random element of the unit ball with u(0) = 1."""
    vals = np.zeros_like(x)
    for _ in range(4):
        amp = rng.uniform(-0.5, 0.5)
        decay = rng.uniform(0.05, 2.0)
        freq = rng.uniform(0.0, 1.5)
        vals += amp * np.exp(-decay * x) * np.cos(freq * x)
    scale = max(1.0, float(np.max(np.abs(vals))) / 0.98)
    vals /= scale
    vals += (1.0 - vals[0]) * np.exp(-x)
    np.clip(vals, -1.0, 1.0, out=vals)
    vals[0] = 1.0
    return GridFunction(x, vals)


def check_operator_suite():
    """Unit-ball preservation, pointwise domination, and power eigenchecks."""
    rng = np.random.default_rng(515235)
    x = make_grid()
    models = [_model_A(), _model_C()]
    ball_excess = 0.0
    gap_min = np.inf
    for i in range(100):
        u = _random_ball_function(rng, x)
        model = models[i % 2]
        g = apply_gamma(model, u)
        ball_excess = max(ball_excess, float(np.max(np.abs(g.values))) - 1.0)
        v = _random_ball_function(rng, x)
        gap = lipschitz_gap(model, u, v)
        gap_min = min(gap_min, float(np.min(gap.values)))

    eig_err = 0.0
    for model in models:
        for p in (0.5, 1.0, 2.0, 3.0):
            u = GridFunction(x, x ** p)
            lam = lambda_p(model, p, n_quad=2048)
            lu = apply_L(model, u, n_quad=2048)
            rel = np.abs(lu.values[1:] - lam * x[1:] ** p) / x[1:] ** p
            eig_err = max(eig_err, float(np.max(rel)))
    ok = ball_excess <= 1e-9 and gap_min >= -1e-8 and eig_err < 1e-8
    return _res("operator_property_suite", ok,
                f"ball excess {ball_excess:.2e}, gap min {gap_min:.2e}, "
                f"eigen err {eig_err:.2e}")


def check_reconstruction():
    """Maxwellian round trip, mass normalization, and profile positivity."""
    v = np.linspace(0.0, 10.0, 501)
    dist = radial_inverse_fourier_3d(lambda s: np.exp(-s), v)
    sel = v <= 6.0
    point_err = float(np.max(np.abs(dist.F[sel] - maxwellian_density(v[sel]))))
    mass_err = abs(dist.mass - 1.0)

    prof = _profile_C()
    vc = np.linspace(0.0, 8.0, 161)
    dc = radial_inverse_fourier_3d(prof.profile, vc)
    min_density = float(np.min(dc.F))
    ok = point_err < 1e-6 and mass_err < 1e-4 and min_density >= -1e-6
    return _res("density_reconstruction", ok,
                f"pointwise err {point_err:.2e}, mass err {mass_err:.2e}, "
                f"min density {min_density:.2e}")


def check_atomic_classification():
    """1-d point-kernel models land in the expected classes."""
    grow = make_atomic_model([(0.5, 1.0)], AffineMap(1.2), AffineMap(0.4))
    flat = make_atomic_model([(0.5, 1.0)], AffineMap(1.0), AffineMap(0.5))
    tag_c = classify(grow)
    p0_c, mu0_c = find_p0(grow)
    tag_a = classify(flat)
    p0_a, _ = find_p0(flat)
    ok = (tag_c == "c" and np.isfinite(p0_c) and mu0_c > 0.0
          and tag_a == "a" and np.isinf(p0_a))
    return _res("atomic_classification", ok,
                f"(1.2, 0.4) -> {tag_c} with mu(p0) {mu0_c:.4f}; "
                f"(1.0, 0.5) -> {tag_a} with p0 {p0_a}")


ALL_CHECKS = [
    check_spectral_golden,
    check_theta_star,
    check_model_C_spectral,
    check_stationary_evolution,
    check_profile_exactness,
    check_selfsimilar_asymptotics,
    check_contraction,
    check_operator_suite,
    check_reconstruction,
    check_atomic_classification,
]


def run_all(report=print):
    """Run every check, emit one line per result, return the list."""
    results = []
    for fn in ALL_CHECKS:
        r = fn()
        results.append(r)
        report(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}")
    return results
