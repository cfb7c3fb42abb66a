"""Newton polygon flags of a trinomial pair against its certified solution count."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from algebra.real_expr import DEFAULT_MAX_PRECISION
from bivar.polygon import LatticePolygon, newton_polygon
from bivar.sparse_poly import SparsePolyQ2
from fans.normal_fan import (
    NormalFan,
    NotHexagon,
    ParallelRays,
    alternates,
    consecutive_translate_check,
    is_hexagon,
    minkowski_sum,
    normal_fan,
)
from rootcount.certified_count import CertifiedCount, count_positive_solutions

logger = logging.getLogger(__name__)


@dataclass
class Theorem3Report:
    polygons: List[LatticePolygon]
    fans: List[NormalFan]
    minkowski: LatticePolygon
    hexagon: bool
    alternates: Optional[bool] = None
    consecutive_translate: Optional[bool] = None
    parallel_rays: bool = False
    count: Optional[CertifiedCount] = None
    violations: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "polygons": [p.to_dict() for p in self.polygons],
            "fans": [f.to_dict() for f in self.fans],
            "minkowski_sum": self.minkowski.to_dict(),
            "hexagon": self.hexagon,
            "alternates": self.alternates,
            "consecutive_translate": self.consecutive_translate,
            "parallel_rays": self.parallel_rays,
            "count": self.count.to_dict() if self.count is not None else None,
            "violations": list(self.violations),
        }


def fan_flags(f: SparsePolyQ2, g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> Theorem3Report:
    """Fans, Minkowski sum and flags of two trinomials, without counting solutions."""
    if len(f) != 3 or len(g) != 3:
        raise ValueError("fan flags need two trinomials")
    p1, p2 = newton_polygon(f, max_precision_bits), newton_polygon(g, max_precision_bits)
    fan1, fan2 = normal_fan(p1), normal_fan(p2)
    total = minkowski_sum(p1, p2)
    report = Theorem3Report([p1, p2], [fan1, fan2], total, is_hexagon(total))
    try:
        report.alternates = alternates(fan1, fan2)
    except ParallelRays:
        report.parallel_rays = True
    try:
        report.consecutive_translate = consecutive_translate_check(p1, p2)
    except NotHexagon:
        pass
    return report


def apply_count(report: Theorem3Report, count: CertifiedCount) -> Theorem3Report:
    """
    Attach a certified count and record violations.

    Five certified solutions together with alternating fans, or with a
    non-hexagonal Minkowski sum, is a violation and is logged.
    """
    report.count = count
    report.violations = []
    if count.exact and count.count == 5:
        if report.alternates:
            report.violations.append("five positive solutions with alternating normal fans")
        if not report.hexagon:
            report.violations.append("five positive solutions without a hexagonal Minkowski sum")
    for v in report.violations:
        logger.error("%s: fans %s", v, [fan.to_dict() for fan in report.fans])
    return report


def theorem3_check(
    f: SparsePolyQ2,
    g: SparsePolyQ2,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
    count: Optional[CertifiedCount] = None,
) -> Theorem3Report:
    report = fan_flags(f, g, max_precision or DEFAULT_MAX_PRECISION)
    if count is None:
        count = count_positive_solutions(f, g, precision, max_depth, max_precision)
    return apply_count(report, count)
