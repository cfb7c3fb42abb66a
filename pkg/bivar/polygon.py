"""
Newton polygons: convex hulls of supports with exact rational vertices.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple

from algebra.real_expr import DEFAULT_MAX_PRECISION
from bivar.sparse_poly import Exponent, SparsePolyQ2

Point = Tuple[Fraction, Fraction]


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """Strictly convex hull, counterclockwise, starting at the lexicographic minimum."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) > 1 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) > 1 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class LatticePolygon:
    """Counterclockwise strictly convex polygon; points and segments are flagged degenerate."""

    vertices: Tuple[Point, ...]

    @classmethod
    def hull_of(cls, points: Sequence[Point]) -> "LatticePolygon":
        return cls(tuple(convex_hull(points)))

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def edges(self) -> List[Point]:
        n = len(self.vertices)
        return [
            (self.vertices[(i + 1) % n][0] - self.vertices[i][0], self.vertices[(i + 1) % n][1] - self.vertices[i][1])
            for i in range(n)
        ]

    def to_lattice(self) -> "LatticePolygon":
        """Scale by the common denominator of all coordinates."""
        den = reduce(
            lambda a, b: a * b // gcd(a, b),
            (c.denominator for v in self.vertices for c in v),
            1,
        )
        return LatticePolygon(tuple((x * den, y * den) for x, y in self.vertices))

    def to_dict(self):
        return {"vertices": [[str(x), str(y)] for x, y in self.vertices], "degenerate": self.degenerate}


def newton_polygon(f: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> LatticePolygon:
    """Newton polygon of f; every coefficient sign must be certified."""
    if not f.terms:
        raise ValueError("newton_polygon of the zero polynomial")
    f.signs(max_precision_bits)
    support: List[Exponent] = f.support
    return LatticePolygon.hull_of(support)
