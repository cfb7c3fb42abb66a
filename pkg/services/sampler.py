"""Certified interval samples of F or phi on (0, 1) as CSV rows for external plotting."""

import csv
import io
import logging
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError
from oracle.grid_scan import grid_point

logger = logging.getLogger(__name__)

Row = Tuple[Fraction, Optional[Fraction], Optional[Fraction]]
SAMPLE_TARGETS = ("F", "phi")


def sample_function(evaluate: Callable[[DyadicInterval, int], DyadicInterval], n: int, bits: int = 64) -> List[Row]:
    """
    n rows (x, lo, hi) with [lo, hi] enclosing the value at x.

    Points where evaluation fails, such as poles of phi, get empty bounds.
    """
    if n < 2:
        raise ValueError(f"need at least 2 sample points, got {n}")
    rows: List[Row] = []
    skipped = 0
    for j in range(1, n + 1):
        x = grid_point(j, n)
        try:
            value = evaluate(DyadicInterval.point(x), bits)
            rows.append((x, value.lo, value.hi))
        except FewnomialError:
            rows.append((x, None, None))
            skipped += 1
    if skipped:
        logger.info("%d of %d sample points have no enclosure", skipped, n)
    return rows


def _fmt(v: Optional[Fraction]) -> str:
    if v is None:
        return ""
    try:
        return format(float(v), ".17g")
    except OverflowError:
        return "inf" if v > 0 else "-inf"


def rows_to_csv(rows: List[Row]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["x", "value_lo", "value_hi"])
    for x, lo, hi in rows:
        writer.writerow([_fmt(x), _fmt(lo), _fmt(hi)])
    return buffer.getvalue()
