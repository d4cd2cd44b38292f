"""Radial grid functions on [0, x_max] with controlled head and tail behavior.

Values are stored on a logarithmic grid with an explicit node at zero.
Power-law data (zero at the origin, positive elsewhere) is interpolated in
log-log coordinates so pure powers x^p are reproduced exactly; everything
else uses a monotone cubic in log(1+x).  Beyond the last node the function
follows an exponential fit to the outermost nodes.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator

DEFAULT_M = 400
DEFAULT_X_MIN = 1e-6
DEFAULT_X_MAX = 50.0

_TAIL_NODES = 5


def make_grid(m: int = DEFAULT_M, x_min: float = DEFAULT_X_MIN,
              x_max: float = DEFAULT_X_MAX) -> np.ndarray:
    """Zero plus m logarithmically spaced nodes on [x_min, x_max]."""
    if m < 8:
        raise ValueError("grid needs at least 8 interior nodes")
    if not 0.0 < x_min < x_max:
        raise ValueError("require 0 < x_min < x_max")
    return np.concatenate(([0.0], np.geomspace(x_min, x_max, m)))


class GridFunction:
    """Scalar function of x >= 0 sampled on a grid, with evaluation off-grid."""

    def __init__(self, x, values):
        x = np.asarray(x, dtype=float)
        values = np.asarray(values, dtype=float)
        if x.ndim != 1 or x.shape != values.shape:
            raise ValueError("x and values must be matching 1-d arrays")
        if x[0] != 0.0 or np.any(np.diff(x) <= 0.0):
            raise ValueError("grid must start at 0 and increase strictly")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid values must be finite")
        self.x = x
        self.values = values
        self._power_mode = values[0] == 0.0 and np.all(values[1:] > 0.0)
        # clamping is only legitimate for characteristic-function data
        self._unit_ball = np.max(np.abs(values)) <= 1.0 + 1e-12
        self._build()

    def _build(self):
        x, v = self.x, self.values
        # denormal values give harmless overflow in the slope weights
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if self._power_mode:
                lx = np.log(x[1:])
                lv = np.log(v[1:])
                self._interp = PchipInterpolator(lx, lv, extrapolate=False)
                # local exponent at the first node controls evaluation below it
                self._head_p = (lv[1] - lv[0]) / (lx[1] - lx[0])
                self._head_c = v[1] / x[1] ** self._head_p
            else:
                self._interp = PchipInterpolator(np.log1p(x), v,
                                                 extrapolate=False)
        # exponential tail fitted to the outermost nodes
        xt = x[-_TAIL_NODES:]
        vt = v[-_TAIL_NODES:]
        if self._power_mode or np.all(vt > 0.0):
            A = np.vstack([np.ones_like(xt), xt]).T
            coef, *_ = np.linalg.lstsq(A, np.log(np.abs(vt)), rcond=None)
            if self._power_mode and coef[1] > 0.0:
                # growing data: extend the log-log power fit instead
                self._tail = ("power", None)
            else:
                self._tail = ("exp", (coef[0], min(coef[1], 0.0)))
        else:
            self._tail = ("hold", float(v[-1]))

    @property
    def x_max(self) -> float:
        return float(self.x[-1])

    def _eval_tail(self, xq):
        kind, data = self._tail
        if kind == "exp":
            a, b = data
            return np.exp(a + b * xq)
        if kind == "power":
            lx = np.log(self.x[-2:])
            lv = np.log(self.values[-2:])
            p = (lv[1] - lv[0]) / (lx[1] - lx[0])
            return self.values[-1] * (xq / self.x[-1]) ** p
        return np.full_like(xq, data)

    def __call__(self, xq):
        xq = np.asarray(xq, dtype=float)
        scalar = xq.ndim == 0
        xq = np.atleast_1d(xq)
        if np.any(xq < 0.0):
            raise ValueError("evaluation points must be nonnegative")
        out = np.empty_like(xq)
        inside = xq <= self.x[-1]
        xi = xq[inside]
        if self._power_mode:
            out_i = np.zeros_like(xi)
            pos = xi > 0.0
            low = pos & (xi < self.x[1])
            mid = pos & ~low
            out_i[low] = self._head_c * xi[low] ** self._head_p
            out_i[mid] = np.exp(self._interp(np.log(xi[mid])))
            out[inside] = out_i
        else:
            out[inside] = self._interp(np.log1p(xi))
        if np.any(~inside):
            out[~inside] = self._eval_tail(xq[~inside])
        if self._unit_ball:
            np.clip(out, -1.0, 1.0, out=out)
        if scalar:
            return float(out[0])
        return out

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.x, values)


def from_callable(f, x=None) -> GridFunction:
    if x is None:
        x = make_grid()
    return GridFunction(x, np.asarray(f(x), dtype=float))


def sup_distance(f: GridFunction, g: GridFunction, p: float = 0.0) -> float:
    """sup over shared nodes of |f - g| / x^p (ratio taken as 0 at x = 0)."""
    x = f.x
    diff = np.abs(f.values - np.asarray(g(x), dtype=float))
    if p == 0.0:
        return float(diff.max())
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(x > 0.0, diff / x ** p, 0.0)
    return float(np.max(r))
