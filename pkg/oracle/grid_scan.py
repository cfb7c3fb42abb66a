"""Sign scan of F on an equispaced grid of (0, 1)."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError
from algebra.real_expr import DEFAULT_MAX_PRECISION
from reduction.gen_poly import GenPoly

logger = logging.getLogger(__name__)


@dataclass
class GridScan:
    samples: int
    sign_changes: List[Fraction] = field(default_factory=list)
    undecided: List[Fraction] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.sign_changes)

    def to_dict(self):
        return {
            "samples": self.samples,
            "count": self.count,
            "sign_changes": [str(x) for x in self.sign_changes],
            "undecided": [str(x) for x in self.undecided],
        }


def grid_point(j: int, n: int) -> Fraction:
    """j-th of n points in (0, 1), rounded down to a dyadic with enough bits to keep them distinct."""
    bits = (n + 1).bit_length() + 8
    return Fraction((j << bits) // (n + 1), 1 << bits)


def _sign(F: GenPoly, x: Fraction, precision: int, max_precision: int) -> int:
    bits = precision
    point = DyadicInterval.point(x)
    while bits <= max_precision:
        try:
            s = F.evaluate(point, bits).sign()
        except FewnomialError:
            s = 0
        if s:
            return s
        bits *= 2
    return 0


def grid_scan(F: GenPoly, n: int, precision: int = 64, max_precision: Optional[int] = None) -> GridScan:
    """
    Certified signs of F at n points of (0, 1); each change is a root between samples.

    The number of sign changes is a lower bound on the number of roots.
    Points whose sign cannot be certified are skipped and recorded.
    """
    if n < 2:
        raise ValueError(f"grid_scan needs n >= 2, got {n}")
    cap = max_precision or DEFAULT_MAX_PRECISION
    scan = GridScan(samples=n)
    last = 0
    for j in range(1, n + 1):
        x = grid_point(j, n)
        s = _sign(F, x, precision, cap)
        if s == 0:
            scan.undecided.append(x)
            continue
        if last and s != last:
            scan.sign_changes.append(x)
        last = s
    if scan.undecided:
        logger.debug("grid scan skipped %d undecided points", len(scan.undecided))
    return scan
