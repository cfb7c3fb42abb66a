"""
Uncertified numeric solutions of f = g = 0 in the positive quadrant.

Damped Newton in logarithmic coordinates (x = e^u, y = e^v) from a grid of
seeds, at mpmath working precision. Used by tests as a sanity oracle only.
"""

import logging
from typing import List, Tuple

import mpmath

from algebra.real_expr import eval_interval
from bivar.sparse_poly import SparsePolyQ2

logger = logging.getLogger(__name__)

Solution = Tuple[mpmath.mpf, mpmath.mpf]


def _numeric_terms(p: SparsePolyQ2, bits: int):
    terms = []
    for t in p.terms:
        c = eval_interval(t.coefficient, bits).midpoint
        terms.append((mpmath.mpf(c.numerator) / c.denominator, mpmath.mpf(t.exponent[0].numerator) / t.exponent[0].denominator, mpmath.mpf(t.exponent[1].numerator) / t.exponent[1].denominator))
    return terms


def _value_and_gradient(terms, u, v):
    """p(e^u, e^v) and its partial derivatives in u and v."""
    value = du = dv = mpmath.mpf(0)
    for c, a, b in terms:
        term = c * mpmath.exp(a * u + b * v)
        value += term
        du += a * term
        dv += b * term
    return value, du, dv


def _residual(f_terms, g_terms, u, v):
    return max(abs(_value_and_gradient(f_terms, u, v)[0]), abs(_value_and_gradient(g_terms, u, v)[0]))


def _newton(f_terms, g_terms, u, v, iterations: int, tolerance):
    r = _residual(f_terms, g_terms, u, v)
    for _ in range(iterations):
        if r < tolerance:
            return u, v, r
        f0, fu, fv = _value_and_gradient(f_terms, u, v)
        g0, gu, gv = _value_and_gradient(g_terms, u, v)
        J = mpmath.matrix([[fu, fv], [gu, gv]])
        try:
            step = mpmath.lu_solve(J, mpmath.matrix([-f0, -g0]))
        except ZeroDivisionError:
            return u, v, r
        damping = mpmath.mpf(1)
        while damping > mpmath.mpf(2) ** -30:
            nu, nv = u + damping * step[0], v + damping * step[1]
            nr = _residual(f_terms, g_terms, nu, nv)
            if nr < r:
                u, v, r = nu, nv, nr
                break
            damping /= 2
        else:
            return u, v, r
    return u, v, r


def numeric_solve(
    f: SparsePolyQ2,
    g: SparsePolyQ2,
    seeds: int = 6,
    radius: float = 4.0,
    precision: int = 128,
    iterations: int = 60,
    tolerance: float = 1e-20,
) -> List[Solution]:
    """
    Approximate positive solutions, deduplicated and sorted by x.

    Seeds form a seeds x seeds grid on [-radius, radius]^2 in log coordinates.
    Nothing returned here is certified.
    """
    found: List[Solution] = []
    if seeds < 1:
        return found
    with mpmath.workprec(precision):
        f_terms, g_terms = _numeric_terms(f, precision), _numeric_terms(g, precision)
        tol = mpmath.mpf(tolerance)
        grid = mpmath.linspace(-radius, radius, seeds) if seeds > 1 else [mpmath.mpf(0)]
        for u0 in grid:
            for v0 in grid:
                u, v, r = _newton(f_terms, g_terms, mpmath.mpf(u0), mpmath.mpf(v0), iterations, tol)
                if r >= tol:
                    continue
                x, y = mpmath.exp(u), mpmath.exp(v)
                if any(abs(x - a) + abs(y - b) < mpmath.mpf(10) ** -10 * (1 + a + b) for a, b in found):
                    continue
                found.append((x, y))
    logger.debug("numeric_solve kept %d solutions from %d seeds", len(found), seeds * seeds)
    return sorted(found)
