"""Algebra module for certified intervals, exact real expressions and univariate polynomials."""

from .dyadic import DyadicInterval, round_dyadic
from .errors import FewnomialError
from .real_expr import RealExpr, Sign, eval_interval, sign_of
from .unipoly import UniPoly, UniPolyR, isolate_roots, sturm_count

__all__ = [
    'DyadicInterval', 'round_dyadic', 'FewnomialError',
    'RealExpr', 'Sign', 'eval_interval', 'sign_of',
    'UniPoly', 'UniPolyR', 'isolate_roots', 'sturm_count'
]
