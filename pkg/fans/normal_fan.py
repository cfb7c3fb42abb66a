"""
Normal fans of lattice polygons, Minkowski sums and the alternation predicate.

All angular comparisons are exact: vectors are ordered by half-plane
(upper half including the positive x-axis first) and then by the sign of
their cross product.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import List, Sequence, Tuple

from algebra.errors import FewnomialError
from bivar.polygon import LatticePolygon, Point

Ray = Tuple[int, int]


class DegeneratePolygon(FewnomialError):
    """The polygon is a point or a segment."""


class ParallelRays(FewnomialError):
    """Two fans share a ray direction."""


class NotHexagon(FewnomialError):
    """The Minkowski sum does not have six edges."""


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def angle_cmp(u, v) -> int:
    """Order by angle in [0, 2pi) measured from the positive x-axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = _cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def same_direction(u, v) -> bool:
    return _cross(u, v) == 0 and _dot(u, v) > 0


def strictly_between(a, v, b) -> bool:
    """v lies in the open counterclockwise sector from a to b."""
    if angle_cmp(a, b) < 0:
        return angle_cmp(a, v) < 0 and angle_cmp(v, b) < 0
    return angle_cmp(a, v) < 0 or angle_cmp(v, b) < 0


def primitive(v) -> Ray:
    x, y = int(v[0]), int(v[1])
    g = gcd(abs(x), abs(y))
    return (x // g, y // g)


@dataclass(frozen=True)
class NormalFan:
    """Primitive outward edge normals, counterclockwise from the positive x-axis."""

    rays: Tuple[Ray, ...]

    def __len__(self) -> int:
        return len(self.rays)

    def to_dict(self):
        return {"rays": [list(r) for r in self.rays]}


def _require_polygon(p: LatticePolygon) -> LatticePolygon:
    if p.degenerate:
        raise DegeneratePolygon(f"polygon with {len(p.vertices)} vertices")
    return p.to_lattice()


def normal_fan(p: LatticePolygon) -> NormalFan:
    lattice = _require_polygon(p)
    rays = [primitive((dy, -dx)) for dx, dy in lattice.edges]
    return NormalFan(tuple(sorted(rays, key=cmp_to_key(angle_cmp))))


def _sorted_edges(polygons: Sequence[LatticePolygon]) -> List[Tuple[Tuple[Fraction, Fraction], int]]:
    edges = [(e, i) for i, p in enumerate(polygons) for e in p.edges]
    return sorted(edges, key=cmp_to_key(lambda a, b: angle_cmp(a[0], b[0])))


def _lowest(p: LatticePolygon) -> Point:
    return min(p.vertices, key=lambda v: (v[1], v[0]))


def minkowski_sum(p1: LatticePolygon, p2: LatticePolygon) -> LatticePolygon:
    """Edge-merge construction; parallel edges of equal direction fuse into one."""
    for p in (p1, p2):
        if p.degenerate:
            raise DegeneratePolygon(f"polygon with {len(p.vertices)} vertices")
    merged: List[Tuple[Fraction, Fraction]] = []
    for e, _ in _sorted_edges((p1, p2)):
        if merged and same_direction(merged[-1], e):
            merged[-1] = (merged[-1][0] + e[0], merged[-1][1] + e[1])
        else:
            merged.append(e)
    a, b = _lowest(p1), _lowest(p2)
    vertex = (a[0] + b[0], a[1] + b[1])
    vertices = []
    for e in merged:
        vertices.append(vertex)
        vertex = (vertex[0] + e[0], vertex[1] + e[1])
    start = vertices.index(min(vertices))
    return LatticePolygon(tuple(vertices[start:] + vertices[:start]))


def is_hexagon(p: LatticePolygon) -> bool:
    return len(p.vertices) == 6


def alternates(f1: NormalFan, f2: NormalFan) -> bool:
    """
    True iff every open sector between consecutive rays of f2 holds exactly
    one ray of f1.

    Raises:
        ParallelRays: a ray of f1 has the direction of a ray of f2
    """
    if len(f1) != 3 or len(f2) != 3:
        raise ValueError("alternation is defined for triangles only")
    for u in f1.rays:
        for v in f2.rays:
            if same_direction(u, v):
                raise ParallelRays(f"ray {u} appears in both fans")
    n = len(f2.rays)
    for i in range(n):
        a, b = f2.rays[i], f2.rays[(i + 1) % n]
        inside = sum(1 for v in f1.rays if strictly_between(a, v, b))
        if inside != 1:
            return False
    return True


def merged_normals(p1: LatticePolygon, p2: LatticePolygon) -> List[Tuple[Ray, Tuple[int, ...]]]:
    """Normals of the Minkowski sum in angular order, each with the summands it comes from."""
    merged: List[Tuple[Ray, Tuple[int, ...]]] = []
    for i, fan in enumerate((normal_fan(p1), normal_fan(p2))):
        for ray in fan.rays:
            for j, (existing, owners) in enumerate(merged):
                if same_direction(existing, ray):
                    merged[j] = (existing, owners + (i,))
                    break
            else:
                merged.append((ray, (i,)))
    return sorted(merged, key=cmp_to_key(lambda a, b: angle_cmp(a[0], b[0])))


def consecutive_translate_check(p1: LatticePolygon, p2: LatticePolygon) -> bool:
    """
    True iff two consecutive edges of p1 + p2 are translates of two
    consecutive edges of the same summand.

    Raises:
        NotHexagon: the Minkowski sum is not a hexagon
    """
    if not is_hexagon(minkowski_sum(p1, p2)):
        raise NotHexagon("consecutive translate check needs a hexagonal Minkowski sum")
    normals = merged_normals(p1, p2)
    n = len(normals)
    for k in range(n):
        here, after = normals[k][1], normals[(k + 1) % n][1]
        if len(here) == 1 and here == after:
            return True
    return False
