"""Bivar module for sparse signomials, Newton polygons and monomial changes of coordinates."""

from .sparse_poly import SparsePolyQ2, Term, AllSameSign, DegenerateSupport
from .polygon import LatticePolygon, newton_polygon, convex_hull
from .monomial_map import (
    MonomialMap, NonInvertibleMap, apply_map, inverse,
    normalize_trinomial_unit, normalize_trinomial_lattice, split_trinomial
)

__all__ = [
    'SparsePolyQ2', 'Term', 'AllSameSign', 'DegenerateSupport',
    'LatticePolygon', 'newton_polygon', 'convex_hull',
    'MonomialMap', 'NonInvertibleMap', 'apply_map', 'inverse',
    'normalize_trinomial_unit', 'normalize_trinomial_lattice', 'split_trinomial'
]
