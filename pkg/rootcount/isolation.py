"""
Certified sign-change isolation by adaptive bisection.

The engine works on any function that can enclose its range and the range
of its derivative over an interval. A box is dropped when the range
excludes zero, and counted as exactly one root when the derivative range
excludes zero and the certified endpoint signs differ. Boxes still open at
max_depth are returned as undecided.
"""

import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from algebra.dyadic import DyadicInterval
from algebra.errors import PowOfNonpositive, ZeroDivisorUndecided
from algebra.real_expr import ZERO, RealExpr, eval_interval
from algebra.unipoly import UniPolyR
from reduction.gen_poly import GenPoly

logger = logging.getLogger(__name__)

_SPLIT_OFFSETS = (8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15)


class EnclosedFunction(ABC):
    """A real function on an interval that can bound its own range."""

    @abstractmethod
    def naive(self, box: DyadicInterval, bits: int) -> DyadicInterval:
        pass

    @abstractmethod
    def naive_derivative(self, box: DyadicInterval, bits: int) -> DyadicInterval:
        pass

    @abstractmethod
    def naive_second_derivative(self, box: DyadicInterval, bits: int) -> DyadicInterval:
        pass

    def enclose(self, box: DyadicInterval, bits: int) -> DyadicInterval:
        """Naive enclosure intersected with the mean-value form."""
        direct = self.naive(box, bits)
        if box.width == 0:
            return direct
        centre = DyadicInterval.point(box.midpoint)
        offset = DyadicInterval(box.lo - box.midpoint, box.hi - box.midpoint)
        centred = self.naive(centre, bits).add(self.naive_derivative(box, bits).mul(offset, bits), bits)
        return direct.intersect(centred) or direct

    def enclose_derivative(self, box: DyadicInterval, bits: int) -> DyadicInterval:
        direct = self.naive_derivative(box, bits)
        if box.width == 0:
            return direct
        centre = DyadicInterval.point(box.midpoint)
        offset = DyadicInterval(box.lo - box.midpoint, box.hi - box.midpoint)
        centred = self.naive_derivative(centre, bits).add(
            self.naive_second_derivative(box, bits).mul(offset, bits), bits
        )
        return direct.intersect(centred) or direct

    def sign_at(self, x: Fraction, bits: int) -> int:
        try:
            return self.naive(DyadicInterval.point(x, bits), bits).sign()
        except (PowOfNonpositive, ZeroDivisorUndecided):
            return 0


class GenPolyFunction(EnclosedFunction):
    def __init__(self, F: GenPoly):
        self.F = F
        self.dF = F.derivative
        self.ddF = self.dF.derivative

    def naive(self, box, bits):
        return self.F.evaluate(box, bits)

    def naive_derivative(self, box, bits):
        return self.dF.evaluate(box, bits)

    def naive_second_derivative(self, box, bits):
        return self.ddF.evaluate(box, bits)


class PolynomialFunction(EnclosedFunction):
    def __init__(self, p: UniPolyR):
        self.p = p
        self.dp = p.derivative()
        self.ddp = self.dp.derivative()

    def naive(self, box, bits):
        return self.p.evaluate_interval(box, bits)

    def naive_derivative(self, box, bits):
        return self.dp.evaluate_interval(box, bits)

    def naive_second_derivative(self, box, bits):
        return self.ddp.evaluate_interval(box, bits)


def _split_point(fn: EnclosedFunction, lo: Fraction, hi: Fraction, bits: int) -> Tuple[Fraction, int]:
    step = (hi - lo) / 16
    for j in _SPLIT_OFFSETS:
        x = lo + step * j
        s = fn.sign_at(x, bits)
        if s:
            return x, s
    return (lo + hi) / 2, 0


def isolate_sign_changes(
    fn: EnclosedFunction,
    a: Fraction,
    b: Fraction,
    sign_a: int,
    sign_b: int,
    bits: int,
    max_depth: int,
) -> Tuple[List[DyadicInterval], List[DyadicInterval]]:
    """
    Isolate the simple roots of fn in [a, b].

    Args:
        fn: function with range enclosures
        a, b: dyadic bounds
        sign_a, sign_b: certified signs at a and b (0 when unknown)
        bits: working precision
        max_depth: bisection depth limit

    Returns:
        (root boxes, undecided boxes), each sorted left to right.
    """
    roots: List[DyadicInterval] = []
    undecided: List[DyadicInterval] = []
    if a >= b:
        return roots, undecided
    stack = [(Fraction(a), Fraction(b), sign_a, sign_b, 0)]
    while stack:
        lo, hi, s_lo, s_hi, depth = stack.pop()
        box = DyadicInterval(lo, hi)
        try:
            value = fn.enclose(box, bits)
            if value.excludes_zero():
                continue
            slope = fn.enclose_derivative(box, bits)
        except (PowOfNonpositive, ZeroDivisorUndecided):
            slope = None
        if slope is not None and slope.excludes_zero() and s_lo and s_hi:
            if s_lo != s_hi:
                roots.append(box)
            continue
        if depth >= max_depth:
            undecided.append(box)
            continue
        mid, s_mid = _split_point(fn, lo, hi, bits)
        stack.append((mid, hi, s_mid, s_hi, depth + 1))
        stack.append((lo, mid, s_lo, s_mid, depth + 1))
    roots.sort(key=lambda iv: iv.lo)
    undecided.sort(key=lambda iv: iv.lo)
    return roots, undecided


def _shift_to_one(coeffs: List[RealExpr]) -> List[RealExpr]:
    # p(1 - t) = sum_j t^j (-1)^j sum_i C(i, j) c_i
    shifted = []
    for j in range(len(coeffs)):
        acc = ZERO
        for i in range(j, len(coeffs)):
            if not coeffs[i].is_zero:
                acc = acc + coeffs[i] * (comb(i, j) * (-1) ** j)
        shifted.append(acc)
    return shifted


def _local_expansions(F: GenPoly, at_one: bool) -> List[Tuple[Fraction, Fraction, UniPolyR]]:
    """
    Rewrite F around an endpoint as a sum of t^e (1-t)^o p(t) with p(0)
    structurally nonzero, where t = x near 0 and t = 1 - x near 1.
    """
    found = []
    for cls in F.grouped():
        coeffs = list(cls.poly.coefficients)
        if at_one:
            coeffs = _shift_to_one(coeffs)
            base, other = cls.l0, cls.k0
        else:
            base, other = cls.k0, cls.l0
        lead = next((i for i, c in enumerate(coeffs) if not c.is_zero), None)
        if lead is None:
            continue
        found.append((base + lead, other, UniPolyR(tuple(coeffs[lead:]))))
    return found


def clear_endpoint(F: GenPoly, at_one: bool, bits: int, max_depth: int) -> Optional[Tuple[Fraction, int]]:
    """
    Root-free neighbourhood of 0 (or of 1) certified by term dominance.

    Returns:
        (delta, sign): F has no root in (0, delta] (resp. [1 - delta, 1))
        and has the given sign there; None when dominance is not certified.
    """
    expansions = _local_expansions(F, at_one)
    if not expansions:
        return None
    e_min = min(e for e, _, _ in expansions)
    for s in range(1, max_depth + 1):
        delta = Fraction(1, 2 ** s)
        t_box = DyadicInterval(Fraction(0), delta)
        one_minus = DyadicInterval(1 - delta, Fraction(1))
        total = DyadicInterval(Fraction(0), Fraction(0))
        try:
            for e, o, poly in expansions:
                term = poly.evaluate_interval(t_box, bits)
                if o:
                    term = term.mul(one_minus.pow_rat(o, bits), bits)
                if e != e_min:
                    term = term.mul(t_box.pow_rat(e - e_min, bits), bits)
                total = total.add(term, bits)
        except (PowOfNonpositive, ZeroDivisorUndecided):
            continue
        if total.excludes_zero():
            return delta, total.sign()
    logger.debug("endpoint %s not cleared at %d bits", 1 if at_one else 0, bits)
    return None


def refine_sign_change(fn: EnclosedFunction, box: DyadicInterval, bits: int) -> Optional[DyadicInterval]:
    """Half of box that keeps the sign change; None when the midpoint cannot be signed."""
    s_lo = fn.sign_at(box.lo, bits)
    mid = box.midpoint
    s_mid = fn.sign_at(mid, bits)
    if not s_lo or not s_mid:
        return None
    if s_mid == s_lo:
        return DyadicInterval(mid, box.hi)
    return DyadicInterval(box.lo, mid)


def root_bound(p: UniPolyR, bits: int) -> Optional[Fraction]:
    """Power of two above the modulus of every root; None if the leading coefficient is not signed."""
    if p.structural_degree < 1:
        return Fraction(1)
    lead = eval_interval(p.coefficients[-1], bits).mignitude()
    if lead == 0:
        return None
    bound = 1 + max(eval_interval(c, bits).magnitude() for c in p.coefficients[:-1]) / lead
    power = Fraction(1)
    while power <= bound:
        power *= 2
    return power


def isolate_polynomial_roots(
    p: UniPolyR,
    lo: Optional[Fraction],
    hi: Optional[Fraction],
    bits: int,
    max_depth: int,
) -> Tuple[List[DyadicInterval], List[DyadicInterval]]:
    """
    Simple real roots of p in [lo, hi]; a missing bound means the root bound.

    Returns:
        (root boxes, undecided boxes); an unsigned leading coefficient
        leaves the whole range undecided.
    """
    if p.structural_degree < 1:
        return [], []
    bound = root_bound(p, bits)
    if bound is None:
        left = lo if lo is not None else Fraction(-(2 ** max_depth))
        right = hi if hi is not None else Fraction(2 ** max_depth)
        return [], [DyadicInterval(left, right)]
    lo = -bound if lo is None else lo
    hi = bound if hi is None else hi
    fn = PolynomialFunction(p)
    return isolate_sign_changes(fn, lo, hi, fn.sign_at(lo, bits), fn.sign_at(hi, bits), bits, max_depth)
