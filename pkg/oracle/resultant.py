"""
Positive-solution count of an integer-exponent system by elimination.

Independent of the reduction pipeline: f and g are cleared to polynomials,
one variable is eliminated with the Sylvester resultant, the positive roots
of the resultant are isolated with sympy and the eliminated coordinate is
recovered from a degree-one member of the subresultant sequence,
y = -s0(x) / s1(x), signed on refined intervals and re-checked against f
and g by interval evaluation.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import Poly, Rational, resultant, subresultants, symbols

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError
from algebra.unipoly import UniPoly, isolate_roots, poly_gcd, squarefree_part, sturm_count
from bivar.sparse_poly import SparsePolyQ2

logger = logging.getLogger(__name__)

X, Y = symbols("x y")
MAX_REFINEMENTS = 200


class CommonComponent(FewnomialError):
    """The resultant vanishes identically: f and g share a curve."""


class NonSimple(FewnomialError):
    """A root of the resultant could not be lifted to a single certified solution."""


def _rational(c: Fraction) -> Rational:
    return Rational(c.numerator, c.denominator)


def _to_expr(p: SparsePolyQ2, swap: bool):
    """p times a monomial, as a polynomial expression in x, y."""
    if not p.has_integer_exponents:
        raise ValueError(f"{p} has non-integer exponents")
    if not p.has_rational_coefficients:
        raise ValueError(f"{p} has irrational coefficients")
    a0 = min(t.exponent[0] for t in p.terms)
    b0 = min(t.exponent[1] for t in p.terms)
    expr = 0
    for t in p.terms:
        a, b = int(t.exponent[0] - a0), int(t.exponent[1] - b0)
        if swap:
            a, b = b, a
        expr += _rational(t.coefficient.as_fraction()) * X**a * Y**b
    return expr


def _unipoly(expr) -> UniPoly:
    coeffs = Poly(expr, X).all_coeffs()[::-1]
    return UniPoly(tuple(Fraction(int(c.p), int(c.q)) for c in coeffs))


def _degree(expr, var) -> int:
    return Poly(expr, X, Y).degree(var)


def _eliminable_pairs(f: SparsePolyQ2, g: SparsePolyQ2) -> List[Tuple[object, object]]:
    """Expression pairs with y eliminable from both, unswapped first, then with x and y swapped."""
    pairs = []
    for swap in (False, True):
        F, G = _to_expr(f, swap), _to_expr(g, swap)
        if _degree(F, Y) >= 1 and _degree(G, Y) >= 1:
            pairs.append((F, G))
    return pairs


def _linear_member(F, G) -> Optional[Tuple[UniPoly, UniPoly]]:
    """(s0, s1) of a member s1(x) y + s0(x) of the subresultant sequence."""
    members = [m for m in subresultants(F, G, Y) if m != 0 and Poly(m, Y).degree() == 1]
    if not members:
        return None
    p = Poly(members[-1], Y)
    return _unipoly(p.coeff_monomial(1)), _unipoly(p.coeff_monomial(Y))


def _horner(p: UniPoly, box: DyadicInterval) -> DyadicInterval:
    acc = DyadicInterval(Fraction(0), Fraction(0))
    for c in reversed(p.coefficients):
        acc = acc.mul(box).add(DyadicInterval(c, c))
    return acc


def _bivariate(expr, x_box: DyadicInterval, y_box: DyadicInterval) -> DyadicInterval:
    total = DyadicInterval(Fraction(0), Fraction(0))
    for (a, b), c in Poly(expr, X, Y).terms():
        term = x_box.pow_int(a).mul(y_box.pow_int(b)).scale(Fraction(int(c.p), int(c.q)))
        total = total.add(term)
    return total


def _lift(
    s: UniPoly,
    lo: Fraction,
    hi: Fraction,
    linear: Optional[Tuple[UniPoly, UniPoly]],
    pair: Tuple[object, object],
) -> int:
    """1 if the root of s in (lo, hi) carries a solution with positive y, else 0."""
    if linear is None:
        raise NonSimple("the subresultant sequence has no member of degree one")
    s0, s1 = linear
    F, G = pair
    fiber = poly_gcd(poly_gcd(s, s0), s1)
    if fiber.degree >= 1 and sturm_count(fiber, lo, hi) > 0:
        raise NonSimple(f"the root of the resultant in ({lo}, {hi}) has more than one solution above it")
    on_axis = poly_gcd(s, s0)
    if on_axis.degree >= 1 and sturm_count(on_axis, lo, hi) > 0:
        return 0
    leads = (_unipoly(Poly(F, Y).LC()), _unipoly(Poly(G, Y).LC()))
    for _ in range(MAX_REFINEMENTS):
        box = DyadicInterval(lo, hi)
        lead_ok = any(_horner(p, box).excludes_zero() for p in leads)
        denominator = _horner(s1, box)
        if lead_ok and denominator.excludes_zero():
            y = (-_horner(s0, box)).div(denominator)
            if y.hi < 0:
                return 0
            if y.lo > 0:
                if _bivariate(F, box, y).excludes_zero() or _bivariate(G, box, y).excludes_zero():
                    raise NonSimple(f"lifted point over ({lo}, {hi}) does not solve the system")
                return 1
        lo, hi = _bisect(s, lo, hi)
    raise NonSimple(f"root of the resultant in ({lo}, {hi}) could not be lifted")


def _bisect(s: UniPoly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    mid = (lo + hi) / 2
    v = s(mid)
    if v == 0:
        quarter = (hi - lo) / 4
        return mid - quarter, mid + quarter
    return (lo, mid) if (v > 0) != (s(lo) > 0) else (mid, hi)


def _count_eliminating_y(F, G) -> int:
    R = _unipoly(resultant(F, G, Y))
    if R.is_zero:
        raise CommonComponent("f and g share a component")
    s = squarefree_part(R)
    if s.degree < 1:
        return 0
    linear = _linear_member(F, G)
    roots: List[Tuple[Fraction, Fraction]] = isolate_roots(s, Fraction(0), s.cauchy_bound())
    count = sum(_lift(s, lo, hi, linear, (F, G)) for lo, hi in roots)
    logger.debug("resultant of degree %d, %d positive roots, %d lifted", R.degree, len(roots), count)
    return count


def resultant_count_positive(f: SparsePolyQ2, g: SparsePolyQ2) -> int:
    """
    Number of solutions of f = g = 0 with both coordinates positive.

    y is eliminated first. When two solutions share an x-coordinate the
    count is redone eliminating x.

    Args:
        f, g: integer exponents (Laurent allowed) and rational coefficients

    Raises:
        CommonComponent: the resultant is identically zero
        NonSimple: a positive root of the resultant could not be certified
    """
    pairs = _eliminable_pairs(f, g)
    if not pairs:
        raise NonSimple("no variable occurs in both f and g")
    failure: Optional[NonSimple] = None
    for F, G in pairs:
        try:
            return _count_eliminating_y(F, G)
        except NonSimple as exc:
            logger.debug("elimination failed, trying the other variable: %s", exc)
            failure = exc
    raise failure
