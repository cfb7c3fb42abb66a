"""
Sparse bivariate signomials with rational exponents.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Tuple, Union

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError
from algebra.real_expr import DEFAULT_MAX_PRECISION, RealExpr, certified_sign, eval_interval, render

Exponent = Tuple[Fraction, Fraction]


class AllSameSign(FewnomialError):
    """All coefficients share one sign, so there is no positive solution."""


class DegenerateSupport(FewnomialError):
    """The support lies on a line."""


def as_exponent(pair: Iterable) -> Exponent:
    a, b = pair
    return Fraction(a), Fraction(b)


@dataclass(frozen=True)
class Term:
    coefficient: RealExpr
    exponent: Exponent


@dataclass(frozen=True)
class SparsePolyQ2:
    """Sum of coefficient * u^a * v^b; terms merged, nonzero and sorted by exponent."""

    terms: Tuple[Term, ...] = ()

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Union[RealExpr, Fraction, int], Iterable]]) -> "SparsePolyQ2":
        merged: Dict[Exponent, RealExpr] = {}
        for coefficient, exponent in items:
            key = as_exponent(exponent)
            value = RealExpr.coerce(coefficient)
            merged[key] = merged[key] + value if key in merged else value
        terms = tuple(
            Term(merged[key], key) for key in sorted(merged) if not merged[key].is_zero
        )
        return cls(terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    @property
    def support(self) -> List[Exponent]:
        return [t.exponent for t in self.terms]

    @property
    def has_integer_exponents(self) -> bool:
        return all(e.denominator == 1 for t in self.terms for e in t.exponent)

    @property
    def has_rational_coefficients(self) -> bool:
        return all(t.coefficient.is_rational for t in self.terms)

    def signs(self, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> List[int]:
        """Certified coefficient signs; raises UndecidedCoefficient."""
        return [certified_sign(t.coefficient, max_precision_bits) for t in self.terms]

    def divided_by(self, coefficient: RealExpr, exponent: Exponent) -> "SparsePolyQ2":
        return SparsePolyQ2.from_terms(
            (t.coefficient / coefficient, (t.exponent[0] - exponent[0], t.exponent[1] - exponent[1]))
            for t in self.terms
        )

    def evaluate_interval(self, u: DyadicInterval, v: DyadicInterval, bits: int) -> DyadicInterval:
        """Enclosure of the value at positive u, v."""
        total = DyadicInterval(Fraction(0), Fraction(0))
        for t in self.terms:
            value = eval_interval(t.coefficient, bits)
            value = value.mul(u.pow_rat(t.exponent[0], bits), bits)
            value = value.mul(v.pow_rat(t.exponent[1], bits), bits)
            total = total.add(value, bits)
        return total

    def is_collinear(self) -> bool:
        points = self.support
        if len(points) < 3:
            return True
        (x0, y0), (x1, y1) = points[0], points[1]
        return all((x1 - x0) * (y - y0) - (x - x0) * (y1 - y0) == 0 for x, y in points[2:])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            a, b = t.exponent
            text = f"({render(t.coefficient)})"
            if a:
                text += f"*x^{a}" if a != 1 else "*x"
            if b:
                text += f"*y^{b}" if b != 1 else "*y"
            parts.append(text)
        return " + ".join(parts)
