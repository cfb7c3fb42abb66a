"""
Certified count of the roots of F in (0, 1).

Phases:
1. Clear root-free neighbourhoods of 0 and 1 by term dominance
2. Isolate sign changes on the remaining closed interval
3. Retry every undecided box at doubled precision up to max_precision
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional

from algebra.dyadic import DyadicInterval
from algebra.real_expr import DEFAULT_MAX_PRECISION
from bivar.sparse_poly import AllSameSign, SparsePolyQ2
from reduction.gen_poly import GenPoly, to_F
from reduction.phi_map import PhiMap
from rootcount.isolation import GenPolyFunction, clear_endpoint, isolate_sign_changes

logger = logging.getLogger(__name__)


class CountStatus(Enum):
    EXACT = "exact"
    PARTIAL = "partial"


@dataclass(frozen=True)
class CertifiedCount:
    """
    count is exact when status is EXACT; otherwise it is a lower bound and
    undecided_intervals lists the boxes that may hold further roots.
    """

    count: int
    status: CountStatus
    undecided_intervals: List[DyadicInterval] = field(default_factory=list)
    precision_used: int = 0
    root_intervals: List[DyadicInterval] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.status is CountStatus.EXACT

    def to_dict(self):
        return {
            "count": self.count,
            "status": self.status.value,
            "undecided_intervals": [[str(iv.lo), str(iv.hi)] for iv in self.undecided_intervals],
            "precision_used": self.precision_used,
            "root_intervals": [[str(iv.lo), str(iv.hi)] for iv in self.root_intervals],
        }


@dataclass
class _Pass:
    """Undecided state carried from one precision to the next."""

    left: Optional[Fraction] = None
    left_sign: int = 0
    right: Optional[Fraction] = None
    right_sign: int = 0
    boxes: List[DyadicInterval] = field(default_factory=list)


def _clear(F: GenPoly, state: _Pass, bits: int, max_depth: int) -> None:
    if state.left is None:
        cleared = clear_endpoint(F, False, bits, max_depth)
        if cleared is not None:
            state.left, state.left_sign = cleared
    if state.right is None:
        cleared = clear_endpoint(F, True, bits, max_depth)
        if cleared is not None:
            delta, sign = cleared
            state.right, state.right_sign = 1 - delta, sign


def certified_count(
    F: GenPoly,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
) -> CertifiedCount:
    """
    Count the roots of F in (0, 1).

    Args:
        F: generalized polynomial
        precision: starting working precision in bits
        max_depth: bisection depth limit per pass
        max_precision: last rung of the precision ladder; defaults to
            precision, i.e. a single pass

    Returns:
        CertifiedCount, EXACT when every root is simple and every box was
        decided.
    """
    if len(F) == 0:
        raise ValueError("F is identically zero")
    ceiling = max(precision, max_precision or precision)
    fn = GenPolyFunction(F)
    roots: List[DyadicInterval] = []
    state = _Pass()
    bits = precision
    started = False
    while True:
        _clear(F, state, bits, max_depth)
        if not started and state.left is not None and state.right is not None:
            started = True
            # cleared neighbourhoods that meet cover all of (0, 1)
            found, state.boxes = isolate_sign_changes(
                fn, state.left, state.right, state.left_sign, state.right_sign, bits, max_depth
            )
            roots.extend(found)
        elif started:
            still_open = []
            for box in state.boxes:
                s_lo, s_hi = fn.sign_at(box.lo, bits), fn.sign_at(box.hi, bits)
                found, open_boxes = isolate_sign_changes(fn, box.lo, box.hi, s_lo, s_hi, bits, max_depth)
                roots.extend(found)
                still_open.extend(open_boxes)
            state.boxes = still_open
        pending = list(state.boxes)
        if state.left is None:
            pending.insert(0, DyadicInterval(Fraction(0), Fraction(1, 2 ** max_depth)))
        if state.right is None:
            pending.append(DyadicInterval(1 - Fraction(1, 2 ** max_depth), Fraction(1)))
        if not pending or bits * 2 > ceiling:
            break
        bits *= 2
        logger.debug("retrying %d undecided boxes at %d bits", len(pending), bits)
    roots.sort(key=lambda iv: iv.lo)
    pending.sort(key=lambda iv: iv.lo)
    status = CountStatus.PARTIAL if pending else CountStatus.EXACT
    if pending:
        logger.info("count is partial: %d roots, %d undecided boxes", len(roots), len(pending))
    return CertifiedCount(len(roots), status, pending, bits, roots)


def count_positive_solutions(
    f: SparsePolyQ2,
    g: SparsePolyQ2,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
) -> CertifiedCount:
    """Number of solutions of f = g = 0 in the open positive quadrant."""
    try:
        F = to_F(f, g, max_precision or DEFAULT_MAX_PRECISION)
    except AllSameSign:
        # g has no positive zero at all
        return CertifiedCount(0, CountStatus.EXACT, [], precision, [])
    return certified_count(F, precision, max_depth, max_precision)


def count_phi_solutions(
    phi: PhiMap,
    target: int = 1,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
) -> CertifiedCount:
    """Roots of phi = target in (0, 1), counted through x^alpha (1-x)^beta P - target Q."""
    return certified_count(phi.to_gen_poly(target), precision, max_depth, max_precision)
