"""Nonnegative weight kernels on [0,1] and the affine scaling maps they drive.

A kernel is a sum of point atoms and a smooth part written against the
Jacobi weight s^aL (1-s)^aR, so delta kernels and the d=2 endpoint
singularity [s(1-s)]^(-1/2) are both represented exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import roots_jacobi

DEFAULT_QUAD_NODES = 64
_MASS_TOL = 1e-12


@lru_cache(maxsize=512)
def jacobi_rule(n: int, alpha_left: float, alpha_right: float):
    """Nodes/weights integrating f(s) s^alpha_left (1-s)^alpha_right over [0,1]."""
    t, w = roots_jacobi(n, alpha_right, alpha_left)
    s = 0.5 * (1.0 + t)
    w = w * 0.5 ** (alpha_left + alpha_right + 1.0)
    return s, w


def _pow(vals, p):
    """Elementwise vals**p with the convention 0**0 = 1 (continuity in the atom count)."""
    return np.power(np.asarray(vals, dtype=float), p)


@dataclass(frozen=True)
class AffineMap:
    """Scaling map s -> c0 + c1*s evaluated on [0,1]."""

    c0: float
    c1: float = 0.0

    def __call__(self, s):
        return self.c0 + self.c1 * np.asarray(s, dtype=float)

    @property
    def min01(self) -> float:
        return min(self.c0, self.c0 + self.c1)

    @property
    def max01(self) -> float:
        return max(self.c0, self.c0 + self.c1)

    def validate(self, r_support: float, tol: float = 1e-12) -> None:
        if self.min01 < -tol:
            raise ValueError(f"affine map {self} takes negative values on [0,1]")
        if self.max01 > r_support + tol:
            raise ValueError(
                f"affine map {self} exceeds the support radius {r_support}"
            )


def _tabulated_factor(table):
    """Monotone piecewise-cubic interpolant of a two-column (s, value) table."""
    table = np.asarray(table, dtype=float)
    if table.ndim != 2 or table.shape[1] != 2:
        raise ValueError("tabulated factor must be a two-column (s, value) table")
    if np.any(table[:, 1] < 0):
        raise ValueError("tabulated kernel factor must be nonnegative")
    return PchipInterpolator(table[:, 0], table[:, 1])


@dataclass(frozen=True)
class SKernel:
    """Atoms plus a Jacobi-weighted smooth part on [0,1].

    Density: sum_i w_i delta(s - s_i) + scale * s^aL (1-s)^aR * factor(s),
    with factor a bounded nonnegative function (None means the constant 1).
    """

    atoms: tuple = ()
    alpha_left: float = 0.0
    alpha_right: float = 0.0
    scale: float = 0.0
    factor: object = field(default=None, compare=False)

    def __post_init__(self):
        atoms = tuple((float(s), float(w)) for s, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        for s, w in atoms:
            if not 0.0 <= s <= 1.0:
                raise ValueError(f"atom location {s} outside [0,1]")
            if w < 0.0:
                raise ValueError(f"negative atom weight {w}")
        if self.alpha_left <= -1.0 or self.alpha_right <= -1.0:
            raise ValueError("endpoint exponents must exceed -1")
        if self.scale < 0.0:
            raise ValueError("smooth-part scale must be nonnegative")

    # -- quadrature ---------------------------------------------------------

    def smooth_rule(self, n: int = DEFAULT_QUAD_NODES, dl: float = 0.0, dr: float = 0.0):
        """Quadrature (s, w) for the smooth part with extra folded exponents.

        sum w_i f(s_i) ~ scale * int f(s) s^(aL+dl) (1-s)^(aR+dr) factor(s) ds.
        """
        if self.scale == 0.0:
            return np.empty(0), np.empty(0)
        s, w = jacobi_rule(n, self.alpha_left + dl, self.alpha_right + dr)
        w = self.scale * w
        if self.factor is not None:
            w = w * np.asarray(self.factor(s), dtype=float)
        return s, w

    def atom_arrays(self):
        if not self.atoms:
            return np.empty(0), np.empty(0)
        arr = np.asarray(self.atoms, dtype=float)
        return arr[:, 0], arr[:, 1]

    def mass(self, n: int = DEFAULT_QUAD_NODES) -> float:
        _, w = self.smooth_rule(n)
        _, aw = self.atom_arrays()
        return float(w.sum() + aw.sum())

    @property
    def is_empty(self) -> bool:
        return self.scale == 0.0 and not self.atoms

    def normalized(self, target: float = 1.0, n: int = DEFAULT_QUAD_NODES) -> "SKernel":
        m = self.mass(n)
        if m <= 0.0:
            raise ValueError("cannot normalize a kernel with zero mass")
        c = target / m
        return replace(
            self,
            atoms=tuple((s, w * c) for s, w in self.atoms),
            scale=self.scale * c,
        )

    def scaled(self, c: float) -> "SKernel":
        return replace(
            self,
            atoms=tuple((s, w * c) for s, w in self.atoms),
            scale=self.scale * c,
        )

    # -- integrals ----------------------------------------------------------

    def integrate(self, f, n: int = DEFAULT_QUAD_NODES) -> float:
        """int f(s) dK(s) over atoms and smooth part."""
        s, w = self.smooth_rule(n)
        total = float(w @ f(s)) if s.size else 0.0
        sa, wa = self.atom_arrays()
        if sa.size:
            total += float(wa @ np.asarray(f(sa), dtype=float))
        return total

    def map_power_integral(self, m: AffineMap, p: float, n: int = DEFAULT_QUAD_NODES) -> float:
        """int m(s)^p dK(s), folding endpoint zeros of m into the Jacobi weight.

        Keeps the quadrature spectrally accurate when m vanishes at s=0 or
        s=1 and p is not an integer.
        """
        if p < 0:
            raise ValueError("power p must be nonnegative")
        sa, wa = self.atom_arrays()
        total = float(wa @ _pow(m(sa), p)) if sa.size else 0.0
        if self.scale == 0.0:
            return total
        v0, v1 = m(0.0), m(1.0)
        if abs(m.c1) < 1e-300:  # constant map
            s, w = self.smooth_rule(n)
            total += _pow(m.c0, p) * float(w.sum())
        elif abs(v0) <= 1e-300:  # m(s) = c1 * s
            s, w = self.smooth_rule(n, dl=p)
            total += m.c1 ** p * float(w.sum())
        elif abs(v1) <= 1e-300:  # m(s) = c0 * (1 - s)
            s, w = self.smooth_rule(n, dr=p)
            total += m.c0 ** p * float(w.sum())
        else:
            s, w = self.smooth_rule(n)
            total += float(w @ _pow(m(s), p))
        return total


def const_kernel(alpha_left: float = 0.0, alpha_right: float = 0.0) -> SKernel:
    """Smooth kernel with constant bounded factor, unit scale (unnormalized)."""
    return SKernel(alpha_left=alpha_left, alpha_right=alpha_right, scale=1.0)


def make_factor(g):
    """Resolve a bounded-factor spec: 'const', a callable, or an (s, v) table."""
    if g is None or (isinstance(g, str) and g == "const"):
        return None
    if callable(g):
        probe = np.asarray(g(np.linspace(0.0, 1.0, 33)), dtype=float)
        if np.any(probe < 0):
            raise ValueError("kernel factor takes negative values on [0,1]")
        return g
    return _tabulated_factor(g)
