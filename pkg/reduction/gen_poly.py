"""
Generalized polynomials sum c * x^k * (1 - x)^l on (0, 1), and the
reduction of a system f = g = 0 to such a function F.

Phases of the reduction:
1. Normalize the trinomial g to -1 + x + y (monomial change of coordinates)
2. Rewrite f in the new coordinates
3. Substitute y = 1 - x
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, floor
from typing import Dict, Iterable, Iterator, List, Tuple, Union

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError, UndecidedCoefficient
from algebra.real_expr import DEFAULT_MAX_PRECISION, ZERO, RealExpr, Sign, eval_interval, render, sign_of
from algebra.unipoly import UniPolyR
from bivar.monomial_map import MonomialMap, apply_map, normalize_trinomial_unit
from bivar.sparse_poly import SparsePolyQ2

logger = logging.getLogger(__name__)


class NonFiniteSolutionSet(FewnomialError):
    """F vanishes identically: f and g share a component."""


@dataclass(frozen=True)
class GenTerm:
    coefficient: RealExpr
    k: Fraction
    l: Fraction


@dataclass(frozen=True)
class TermClass:
    """x^k0 * (1 - x)^l0 * poly(x): all terms sharing fractional parts of (k, l)."""

    k0: Fraction
    l0: Fraction
    poly: UniPolyR


def _frac(q: Fraction) -> Fraction:
    return q - floor(q)


@dataclass(frozen=True)
class GenPoly:
    """Sum of c * x^k * (1-x)^l with pairwise distinct (k, l), sorted by (k, l)."""

    terms: Tuple[GenTerm, ...] = ()

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Union[RealExpr, Fraction, int], Fraction, Fraction]]) -> "GenPoly":
        merged: Dict[Tuple[Fraction, Fraction], RealExpr] = {}
        for coefficient, k, l in items:
            key = (Fraction(k), Fraction(l))
            value = RealExpr.coerce(coefficient)
            merged[key] = merged[key] + value if key in merged else value
        return cls(tuple(GenTerm(merged[key], *key) for key in sorted(merged) if not merged[key].is_zero))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[GenTerm]:
        return iter(self.terms)

    def __add__(self, other: "GenPoly") -> "GenPoly":
        return GenPoly.from_terms(
            [(t.coefficient, t.k, t.l) for t in self.terms] + [(t.coefficient, t.k, t.l) for t in other.terms]
        )

    def scale(self, c: RealExpr) -> "GenPoly":
        return GenPoly.from_terms((c * t.coefficient, t.k, t.l) for t in self.terms)

    @cached_property
    def derivative(self) -> "GenPoly":
        items = []
        for t in self.terms:
            if t.k != 0:
                items.append((t.coefficient * t.k, t.k - 1, t.l))
            if t.l != 0:
                items.append((t.coefficient * (-t.l), t.k, t.l - 1))
        return GenPoly.from_terms(items)

    def evaluate(self, x: DyadicInterval, bits: int) -> DyadicInterval:
        """Enclosure of the function over x, a subinterval of (0, 1)."""
        one_minus = DyadicInterval(1 - x.hi, 1 - x.lo)
        total = DyadicInterval(Fraction(0), Fraction(0))
        for t in self.terms:
            value = eval_interval(t.coefficient, bits)
            if t.k:
                value = value.mul(x.pow_rat(t.k, bits), bits)
            if t.l:
                value = value.mul(one_minus.pow_rat(t.l, bits), bits)
            total = total.add(value, bits)
        return total

    def grouped(self) -> List[TermClass]:
        """Group form; distinct classes are linearly independent functions."""
        buckets: Dict[Tuple[Fraction, Fraction], List[GenTerm]] = {}
        for t in self.terms:
            buckets.setdefault((_frac(t.k), _frac(t.l)), []).append(t)
        classes = []
        for key in sorted(buckets):
            members = buckets[key]
            k0 = min(t.k for t in members)
            l0 = min(t.l for t in members)
            size = max(int(t.k - k0) + int(t.l - l0) for t in members) + 1
            coeffs = [ZERO] * size
            for t in members:
                a, b = int(t.k - k0), int(t.l - l0)
                for i in range(b + 1):
                    binom = comb(b, i) * (-1) ** i
                    coeffs[a + i] = coeffs[a + i] + t.coefficient * binom
            classes.append(TermClass(k0, l0, UniPolyR(tuple(coeffs))))
        return classes

    def is_identically_zero(self, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> bool:
        """True when every group coefficient is zero or cannot be signed."""
        for cls in self.grouped():
            for c in cls.poly.coefficients:
                if not c.is_zero and sign_of(c, max_precision_bits) is not Sign.UNDECIDED:
                    return False
        return True

    def to_dict(self):
        return [
            {"coefficient": render(t.coefficient), "k": str(t.k), "l": str(t.l)}
            for t in self.terms
        ]

    def __str__(self) -> str:
        return " + ".join(f"({render(t.coefficient)})*x^({t.k})*(1-x)^({t.l})" for t in self.terms) or "0"


@dataclass(frozen=True)
class Reduction:
    """Trace of the reduction of f = g = 0 to F(x) = 0 on (0, 1)."""

    unit_map: MonomialMap
    transformed: SparsePolyQ2
    F: GenPoly


def reduce_system(f: SparsePolyQ2, g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> Reduction:
    unit_map = normalize_trinomial_unit(g, max_precision_bits)
    transformed = apply_map(f, unit_map)
    F = GenPoly.from_terms((t.coefficient, t.exponent[0], t.exponent[1]) for t in transformed.terms)
    if F.is_identically_zero(max_precision_bits):
        raise NonFiniteSolutionSet(f"{f} vanishes on the curve {g} = 0")
    for t in F.terms:
        if sign_of(t.coefficient, max_precision_bits) is Sign.UNDECIDED:
            raise UndecidedCoefficient(f"merged coefficient {render(t.coefficient)} cannot be signed")
    logger.debug("reduced to F with %d terms", len(F))
    return Reduction(unit_map, transformed, F)


def to_F(f: SparsePolyQ2, g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> GenPoly:
    """F(x) whose roots in (0, 1) are in bijection with the positive solutions of f = g = 0."""
    return reduce_system(f, g, max_precision_bits).F
