"""Moment recursion for order-1 profiles and power-tail classification.

Writing a profile as w(x) = sum_k (-1)^k m_k x^k / k! with m_0 = m_1 = 1
and matching powers of x in mu(1) x w' + w = Gamma(w) gives
    D(s) m_s = sum_terms int sum_{|k| = s, spread} C(s; k)
               prod_j m_{k_j} a_j(sigma)^{k_j} dK(sigma),
with D(s) = s mu(1) - lambda(s) + 1 and the inner sum over integer
compositions of s that put weight on at least two factors.  (For real
measures the right side couples moment products of the representing
measure; for integer s the multinomial expansion reduces it exactly to
products of the m_k, which is what is implemented.)  Moments stay finite
while D(s) > 0; the denominator first turns nonpositive at the tail
order s*.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .models import as_operator
from .spectral import lambda_p, mu_p, tail_root

_D_TOL = 1e-10


def _compositions(total: int, parts: int):
    """All tuples of nonnegative integers of given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _mixed_integral(kernel, maps, powers, n_quad: int) -> float:
    """int prod_j maps[j](sigma)^powers[j] dK(sigma) for integer powers."""
    s, w = kernel.smooth_rule(n_quad)
    total = 0.0
    if s.size:
        prod = np.ones_like(s)
        for m, k in zip(maps, powers):
            if k:
                prod = prod * np.asarray(m(s), dtype=float) ** k
        total += float(w @ prod)
    sa, wa = kernel.atom_arrays()
    for si, wi in zip(sa, wa):
        val = wi
        for m, k in zip(maps, powers):
            if k:
                val *= float(m(si)) ** k
        total += val
    return total


def _multinomial(s: int, ks) -> float:
    out = factorial(s)
    for k in ks:
        out //= factorial(k)
    return float(out)


@dataclass
class MomentTable:
    p: float
    s_values: list
    m_values: list
    finite: list
    denominators: list
    s_star: float
    notes: list

    def as_dict(self):
        return {s: (m, f) for s, m, f in
                zip(self.s_values, self.m_values, self.finite)}


def moment_recursion(model, s_max: int, n_quad: int = 64) -> MomentTable:
    """Moments m_0..m_s_max of the order-1 profile; nan once they blow up."""
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    op = as_operator(model)
    mu1 = float(mu_p(op, 1.0, n_quad))
    s_star = tail_root(op, 1.0, n_quad)
    notes = []
    s_values, m_values, finite, denoms = [0, 1], [1.0, 1.0], [True, True], \
        [np.nan, 0.0]
    m = {0: 1.0, 1: 1.0}
    ok_flags = {0: True, 1: True}
    for s in range(2, s_max + 1):
        dens = s * mu1 - float(lambda_p(op, float(s), n_quad)) + 1.0
        num = 0.0
        needs_infinite = False
        for term in op.terms:
            for ks in _compositions(s, term.arity):
                if max(ks) == s:
                    continue  # the concentrated terms sit on the left side
                if any(not ok_flags[k] for k in ks):
                    needs_infinite = True
                    continue
                coef = _multinomial(s, ks)
                for k in ks:
                    coef *= m[k]
                num += coef * _mixed_integral(term.kernel, term.maps, ks,
                                              n_quad)
        ok = dens > _D_TOL and not needs_infinite
        if abs(dens) <= _D_TOL and abs(num) <= _D_TOL:
            notes.append(f"s={s}: borderline 0/0, right side vanishes with "
                         "the denominator; moment undetermined at this order")
        val = num / dens if ok else np.nan
        m[s] = val
        ok_flags[s] = ok
        s_values.append(s)
        m_values.append(val)
        finite.append(ok)
        denoms.append(dens)
    return MomentTable(p=1.0, s_values=s_values, m_values=m_values,
                       finite=finite, denominators=denoms,
                       s_star=s_star if s_star is not None else np.nan,
                       notes=notes)


def tail_classification(model, p: float, n_quad: int = 64) -> dict:
    """Which moments of the order-p profile's representing measure converge."""
    if p > 1.0:
        raise ValueError("profiles exist only for p <= 1")
    if p < 1.0:
        return {"p": p, "finite_below": p, "s_star": None,
                "summary": f"moments finite only for s < {p}"}
    s = tail_root(model, 1.0, n_quad)
    if s is None:
        return {"p": 1.0, "finite_below": np.inf, "s_star": None,
                "summary": "all moments finite"}
    return {"p": 1.0, "finite_below": s, "s_star": s,
            "summary": f"moments finite for s < {s:.6g}"}


def profile_moment_check(prof, s: int, h: float = 0.0125) -> float:
    """Moment m_s of a solved order-1 profile from one-sided derivatives of
    w at 0, Richardson-extrapolated; s = 2 or 3 only."""
    if s not in (2, 3):
        raise ValueError("only s = 2 and s = 3 are supported")
    w = prof.reduced()
    if w.x_max < 6.0 * h:
        raise ValueError("grid too short for the derivative stencil")

    def estimate(hh):
        if s == 2:
            return (w(2.0 * hh) - 2.0 * w(hh) + w(0.0)) / hh ** 2
        return -(w(3.0 * hh) - 3.0 * w(2.0 * hh) + 3.0 * w(hh)
                 - w(0.0)) / hh ** 3

    a, b = estimate(h), estimate(0.5 * h)
    return float(2.0 * b - a)
