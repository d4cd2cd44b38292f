"""Spectral function of the linearized gain operator and what follows from it.

The linearization at u = 1 acts on powers x^p with eigenvalue
    lambda(p) = sum_terms sum_j int m_j(s)^p dK(s),
and mu(p) = (lambda(p) - 1)/p is the scaling rate available at order p.
The minimizer p0 of mu, the support radius of the scalings, and the sign
of mu(p0) sort models into four qualitative classes; the second root of
mu(s) = mu(p) gives the power-tail order of the corresponding profile.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .kernels import SKernel, make_factor
from .models import as_operator

_FD_H = 1e-5
_BRACKET_CAP = 256.0
_SUPPORT_TOL = 1e-12
P0_INFINITE = np.inf


def lambda_p(model, p, n_quad: int = 64):
    """Eigenvalue lambda(p) of the linearized gain on x^p, p >= 0."""
    op = as_operator(model)
    p_arr = np.atleast_1d(np.asarray(p, dtype=float))
    if np.any(p_arr < 0.0):
        raise ValueError("lambda(p) requires p >= 0")
    out = np.zeros_like(p_arr)
    for i, pi in enumerate(p_arr):
        tot = 0.0
        for t in op.terms:
            for m in t.maps:
                tot += t.kernel.map_power_integral(m, pi, n_quad)
        out[i] = tot
    if np.asarray(p).ndim == 0:
        return float(out[0])
    return out


def mu_p(model, p, n_quad: int = 64):
    """Scaling rate mu(p) = (lambda(p) - 1)/p, defined for p > 0."""
    p_arr = np.asarray(p, dtype=float)
    if np.any(p_arr <= 0.0):
        raise ValueError("mu(p) requires p > 0")
    return (lambda_p(model, p, n_quad) - 1.0) / p_arr


def lambda_prime(model, p: float, n_quad: int = 64, h: float = _FD_H) -> float:
    """d lambda / dp by centered differences on the spectrally exact lambda."""
    if p <= h:
        h = 0.5 * p
    return (lambda_p(model, p + h, n_quad)
            - lambda_p(model, p - h, n_quad)) / (2.0 * h)


def mu_prime(model, p: float, n_quad: int = 64, h: float = _FD_H) -> float:
    """mu'(p) = (p lambda'(p) - (lambda(p) - 1)) / p^2."""
    lam = lambda_p(model, p, n_quad)
    dlam = lambda_prime(model, p, n_quad, h)
    return (dlam * p - (lam - 1.0)) / p ** 2


def _require_multilinear(op):
    if op.max_arity < 2:
        raise ValueError("classification needs a term of arity >= 2")


def find_p0(model, p_max: float = _BRACKET_CAP, n_quad: int = 64):
    """(p0, mu(p0)) for the unique interior minimizer of mu, or the
    infinite marker (inf, limiting mu) when mu' stays negative.

    The sign change of mu' is bracketed by doubling, past p_max if needed,
    up to a fixed cap before declaring the minimizer infinite.
    """
    op = as_operator(model)
    _require_multilinear(op)
    cap = max(float(p_max), _BRACKET_CAP)
    p_lo = 1e-3
    d_lo = mu_prime(op, p_lo, n_quad)
    if d_lo >= 0.0:
        return p_lo, float(mu_p(op, p_lo, n_quad))
    p_hi, d_hi = p_lo, d_lo
    while p_hi < cap:
        p_lo = p_hi
        p_hi = min(2.0 * p_hi, cap)
        d_hi = mu_prime(op, p_hi, n_quad)
        if d_hi > 0.0:
            break
    if d_hi <= 0.0:
        return P0_INFINITE, float(mu_p(op, cap, n_quad))
    p0 = brentq(lambda q: mu_prime(op, q, n_quad), p_lo, p_hi,
                xtol=1e-10, rtol=8.9e-16)
    return float(p0), float(mu_p(op, p0, n_quad))


def tail_root(model, p: float, n_quad: int = 64, s_cap: float = 1e4):
    """Maximal root s > p0 of mu(s) = mu(p), or None when absent.

    A second root needs mu to recover above mu(p) past its minimum, which
    requires scaling factors above 1 somewhere in the model.
    """
    op = as_operator(model)
    p0, mu0 = find_p0(op, n_quad=n_quad)
    if p >= p0:
        raise ValueError("tail root is defined for p below the mu-minimizer")
    if not np.isfinite(p0):
        return None
    target = float(mu_p(op, p, n_quad))
    if mu0 >= target:
        return None
    s_hi = max(2.0 * p0, p0 + 1.0)
    while True:
        with np.errstate(over="ignore", invalid="ignore"):
            val = float(mu_p(op, s_hi, n_quad))
        # the folded Jacobi weight overflows for very large orders; past
        # that point mu can only be approaching its limit from below
        if not np.isfinite(val):
            return None
        if val > target:
            break
        s_hi *= 2.0
        if s_hi > s_cap:
            return None
    return float(brentq(lambda s: float(mu_p(op, s, n_quad)) - target,
                        p0, s_hi, xtol=1e-10, rtol=8.9e-16))


def classify(model, n_quad: int = 64) -> str:
    """Four-way taxonomy of the scaling-rate curve mu(p).

    a: mu decreases for all p (minimizer at infinity);
    b: finite minimizer, every scaling factor within [0, 1];
    c: factors exceed 1 and mu(p0) > 0;
    d: factors exceed 1 and mu(p0) < 0.
    """
    op = as_operator(model)
    _require_multilinear(op)
    p0, mu0 = find_p0(op, n_quad=n_quad)
    if not np.isfinite(p0):
        return "a"
    if op.support_radius() <= 1.0 + _SUPPORT_TOL:
        return "b"
    return "c" if mu0 > 0.0 else "d"


@dataclass(frozen=True)
class SpectralProfile:
    """Sampled spectral data plus the derived classification summary."""

    p_grid: np.ndarray
    lambda_values: np.ndarray
    mu_values: np.ndarray
    mu_prime_values: np.ndarray
    p0: float
    mu_at_p0: float
    class_tag: str
    s_star_of_1: float


def spectral_profile(model, p_min: float = 0.1, p_max: float = 8.0,
                     steps: int = 80, n_quad: int = 64) -> SpectralProfile:
    op = as_operator(model)
    p_grid = np.linspace(p_min, p_max, steps)
    lam = lambda_p(op, p_grid, n_quad)
    mu = (lam - 1.0) / p_grid
    dmu = np.array([mu_prime(op, pi, n_quad) for pi in p_grid])
    p0, mu0 = find_p0(op, n_quad=n_quad)
    tag = classify(op, n_quad)
    s1 = tail_root(op, 1.0, n_quad) if (np.isfinite(p0) and p0 > 1.0) else None
    return SpectralProfile(
        p_grid=p_grid, lambda_values=lam, mu_values=mu, mu_prime_values=dmu,
        p0=p0, mu_at_p0=mu0, class_tag=tag,
        s_star_of_1=s1 if s1 is not None else np.nan,
    )


def theta_star(d: int = 3, g="const", m: float = 1.0,
               n_quad: int = 512) -> float:
    """Critical thermostat coupling: for theta below it the minimizer of mu
    sits above p = 1, so finite-energy data reach the self-similar regime.

    Computed as the ratio of two angular averages with beta = 4m/(1+m)^2;
    the result does not depend on the normalization of the kernel.
    """
    if m <= 0.0:
        raise ValueError("mass ratio m must be positive")
    ex = 0.5 * (d - 3)
    kernel = SKernel(alpha_left=ex, alpha_right=ex, scale=1.0,
                     factor=make_factor(g))
    if kernel.mass(n_quad) <= 0.0:
        raise ValueError("kernel factor has zero mass")
    beta = 4.0 * m / (1.0 + m) ** 2

    def xlogx(u):
        out = np.zeros_like(u)
        pos = u > 0.0
        out[pos] = u[pos] * np.log(u[pos])
        return out

    num = -kernel.integrate(lambda s: xlogx(s) + xlogx(1.0 - s), n_quad)
    den = kernel.integrate(lambda s: beta * s + xlogx(1.0 - beta * s), n_quad)
    if den <= 0.0:
        raise ValueError("degenerate denominator in the coupling threshold")
    return num / den


def convergence_rate(model, p: float, eps: float, n_quad: int = 64) -> float:
    """Decay rate (p + eps)(mu(p) - mu(p + eps)) of the order-(p+eps) error
    between a solution and its self-similar limit."""
    return float((p + eps) * (mu_p(model, p, n_quad)
                              - mu_p(model, p + eps, n_quad)))
