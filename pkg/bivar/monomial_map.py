"""
Monomial changes of coordinates and the two normalizations of a trinomial.

A map is stored new-in-terms-of-old: each new variable is
``v_j = s_j * u^(row_j)`` for a rational invertible matrix with rows row_j
and positive scalings s_j. Applying it to a polynomial also divides by a
monomial ``d * u^delta``, which is how the constant term -1 appears.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import List, Tuple

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from algebra.errors import FewnomialError
from algebra.real_expr import DEFAULT_MAX_PRECISION, ONE, RealExpr, power
from bivar.sparse_poly import (
    AllSameSign,
    DegenerateSupport,
    Exponent,
    SparsePolyQ2,
    Term,
)

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]


class NonInvertibleMap(FewnomialError):
    """The exponent matrix is singular."""


def _matrix(rows) -> Matrix:
    (a, b), (c, d) = rows
    return (Fraction(a), Fraction(b)), (Fraction(c), Fraction(d))


def determinant(m: Matrix) -> Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matrix_inverse(m: Matrix) -> Matrix:
    det = determinant(m)
    if det == 0:
        raise NonInvertibleMap(f"singular exponent matrix {m}")
    (a, b), (c, d) = m
    return (d / det, -b / det), (-c / det, a / det)


def row_times(w: Exponent, m: Matrix) -> Exponent:
    """Row vector w times matrix m."""
    return (
        w[0] * m[0][0] + w[1] * m[1][0],
        w[0] * m[0][1] + w[1] * m[1][1],
    )


@dataclass(frozen=True)
class MonomialMap:
    """
    v_j = scalings[j] * u^(matrix[j]), followed by division by
    divisor_coefficient * u^divisor_exponent.

    When new_in_terms_of_old is False the same data describes the old
    variables in terms of the new ones (u_j = scalings[j] * v^(matrix[j])).
    """

    matrix: Matrix
    scalings: Tuple[RealExpr, RealExpr] = (ONE, ONE)
    divisor_coefficient: RealExpr = ONE
    divisor_exponent: Exponent = (Fraction(0), Fraction(0))
    new_in_terms_of_old: bool = True

    @classmethod
    def identity(cls) -> "MonomialMap":
        return cls(_matrix(((1, 0), (0, 1))))

    @property
    def determinant(self) -> Fraction:
        return determinant(self.matrix)

    def oriented(self) -> "MonomialMap":
        """Equivalent map in new-in-terms-of-old form."""
        if self.new_in_terms_of_old:
            return self
        inv = matrix_inverse(self.matrix)
        scalings = tuple(
            power(self.scalings[0], -inv[i][0]) * power(self.scalings[1], -inv[i][1])
            for i in range(2)
        )
        return MonomialMap(inv, scalings, self.divisor_coefficient, self.divisor_exponent, True)

    def without_divisor(self) -> "MonomialMap":
        return replace(self, divisor_coefficient=ONE, divisor_exponent=(Fraction(0), Fraction(0)))

    def map_exponent(self, w: Exponent) -> Exponent:
        m = self.oriented()
        shifted = (w[0] - m.divisor_exponent[0], w[1] - m.divisor_exponent[1])
        return row_times(shifted, matrix_inverse(m.matrix))

    def to_dict(self):
        return {
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "scalings": [str(s) for s in self.scalings],
            "divisor_coefficient": str(self.divisor_coefficient),
            "divisor_exponent": [str(x) for x in self.divisor_exponent],
            "new_in_terms_of_old": self.new_in_terms_of_old,
        }


def apply_map(f: SparsePolyQ2, m: MonomialMap) -> SparsePolyQ2:
    """
    Rewrite f in the new coordinates of m.

    Each term c*u^w becomes (c/d) * prod_j s_j^(-e_j) * v^e with
    e = (w - delta) * M^-1.
    """
    m = m.oriented()
    inv = matrix_inverse(m.matrix)
    items = []
    for term in f.terms:
        shifted = (term.exponent[0] - m.divisor_exponent[0], term.exponent[1] - m.divisor_exponent[1])
        e = row_times(shifted, inv)
        coefficient = term.coefficient / m.divisor_coefficient
        coefficient = coefficient * power(m.scalings[0], -e[0]) * power(m.scalings[1], -e[1])
        items.append((coefficient, e))
    return SparsePolyQ2.from_terms(items)


def inverse(m: MonomialMap) -> MonomialMap:
    """Map undoing m, so apply_map(apply_map(f, m), inverse(m)) == f."""
    m = m.oriented()
    inv = matrix_inverse(m.matrix)
    scalings = tuple(
        power(m.scalings[0], -inv[i][0]) * power(m.scalings[1], -inv[i][1])
        for i in range(2)
    )
    new_delta = row_times((-m.divisor_exponent[0], -m.divisor_exponent[1]), inv)
    scale = power(m.scalings[0], new_delta[0]) * power(m.scalings[1], new_delta[1])
    coefficient = ONE / (m.divisor_coefficient * scale)
    return MonomialMap(inv, scalings, coefficient, new_delta, True)


@dataclass(frozen=True)
class TrinomialSplit:
    """The negative-of-majority pivot and the two remaining terms, x-role first."""

    pivot: Term
    x_term: Term
    y_term: Term

    @property
    def divisor(self) -> RealExpr:
        return -self.pivot.coefficient

    def offset(self, term: Term) -> Exponent:
        return (term.exponent[0] - self.pivot.exponent[0], term.exponent[1] - self.pivot.exponent[1])


def split_trinomial(g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> TrinomialSplit:
    """
    Pick the term of minority sign as the pivot that becomes -1.

    The other two terms are ordered so that their offsets from the pivot
    form a matrix of positive determinant.
    """
    if len(g) != 3:
        raise ValueError(f"expected a trinomial, got {len(g)} terms")
    signs = g.signs(max_precision_bits)
    if abs(sum(signs)) == 3:
        raise AllSameSign(f"all coefficients of {g} have sign {signs[0]}")
    if g.is_collinear():
        raise DegenerateSupport(f"support of {g} is collinear")
    minority = -1 if sum(signs) > 0 else 1
    index = signs.index(minority)
    pivot = g.terms[index]
    first, second = [t for i, t in enumerate(g.terms) if i != index]
    split = TrinomialSplit(pivot, first, second)
    if determinant((split.offset(first), split.offset(second))) < 0:
        split = TrinomialSplit(pivot, second, first)
    return split


def normalize_trinomial_unit(g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> MonomialMap:
    """Map taking g to -1 + x + y."""
    split = split_trinomial(g, max_precision_bits)
    d = split.divisor
    return MonomialMap(
        _matrix((split.offset(split.x_term), split.offset(split.y_term))),
        (split.x_term.coefficient / d, split.y_term.coefficient / d),
        d,
        split.pivot.exponent,
        True,
    )


def _complete_basis(b1: Tuple[int, int]) -> Tuple[int, int]:
    """Second row of a determinant-one integer basis, reduced deterministically."""
    s, t, h = igcdex(b1[0], b1[1])
    s, t = int(s), int(t)
    if h < 0:
        s, t = -s, -t
    b2 = (-t, s)
    if b1[1] != 0:
        r = b2[1] % abs(b1[1])
        j = (r - b2[1]) // b1[1]
    else:
        r = b2[0] % abs(b1[0])
        j = (r - b2[0]) // b1[0]
    return b2[0] + j * b1[0], b2[1] + j * b1[1]


def normalize_trinomial_lattice(
    g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION
) -> Tuple[MonomialMap, int, int, int]:
    """
    Map taking g to -1 + z^k3 + z^k4 * w^l4 with k3 > 0 and l4 > 0.

    Returns:
        (map, k3, k4, l4); the map's matrix is unimodular.
    """
    split = split_trinomial(g, max_precision_bits)
    if not g.has_integer_exponents:
        raise ValueError("lattice normalization needs integer exponents")
    g3 = tuple(int(c) for c in split.offset(split.x_term))
    g4 = split.offset(split.y_term)
    k3 = gcd(abs(g3[0]), abs(g3[1]))
    b1 = (g3[0] // k3, g3[1] // k3)
    b2 = _complete_basis(b1)
    matrix = _matrix((b1, b2))
    k4, l4 = row_times(g4, matrix_inverse(matrix))
    if l4 < 0:
        b2 = (-b2[0], -b2[1])
        matrix = _matrix((b1, b2))
        l4 = -l4
    k4, l4 = int(k4), int(l4)
    d = split.divisor
    b3 = split.x_term.coefficient / d
    b4 = split.y_term.coefficient / d
    s_z = power(b3, Fraction(1, k3))
    s_w = power(b4 * power(s_z, Fraction(-k4)), Fraction(1, l4))
    m = MonomialMap(matrix, (s_z, s_w), d, split.pivot.exponent, True)
    logger.debug("lattice normalization k3=%d k4=%d l4=%d matrix=%s", k3, k4, l4, matrix)
    return m, k3, k4, l4
