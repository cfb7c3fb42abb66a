"""
Explicit upper bounds and their empirical check on a concrete system.

check_bounds counts the roots N_j of every stage f_j of the derivative
recursion and verifies
- N_j <= N_(j+1) + 2^(j-1) along the chain,
- N_(t-1) <= deg P + deg Q + 2 for the final rational map,
- N_1 <= 3 * 2^(t-2) - 1.
A certified count above a bound is a theorem violation and is logged at
ERROR level with the full system.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

from algebra.errors import FewnomialError
from algebra.real_expr import DEFAULT_MAX_PRECISION
from bivar.sparse_poly import AllSameSign, SparsePolyQ2
from reduction.gen_poly import to_F
from reduction.layered import recursion_chain
from reduction.phi_map import PhiMap, build_phi
from rootcount.certified_count import CertifiedCount, CountStatus, certified_count

logger = logging.getLogger(__name__)


class TheoremViolation(FewnomialError):
    """A certified count exceeds a proven upper bound."""


class CheckStatus(Enum):
    HOLDS = "holds"
    UNDECIDED = "undecided"
    VIOLATED = "violated"


def bound_t(t: int) -> int:
    """Upper bound 3 * 2^(t-2) - 1 on positive solutions of a t-nomial/trinomial system."""
    if t < 3:
        raise ValueError(f"bound_t needs t >= 3, got {t}")
    return 3 * 2 ** (t - 2) - 1


def bound_phi(phi: PhiMap, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> int:
    """deg P + deg Q + 2 with certified degrees."""
    deg_p, deg_q = phi.degrees(max_precision_bits)
    return max(deg_p, 0) + max(deg_q, 0) + 2


def compare(lower: CertifiedCount, upper_count: int, upper_exact: bool = True) -> CheckStatus:
    """Status of lower.count <= upper when the right side is exact only if upper_exact."""
    if lower.count > upper_count and upper_exact:
        return CheckStatus.VIOLATED
    if lower.exact and upper_exact:
        return CheckStatus.HOLDS
    return CheckStatus.UNDECIDED


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: int
    rhs: int
    status: CheckStatus

    def to_dict(self):
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "status": self.status.value}


@dataclass
class BoundReport:
    t: int
    counts: List[CertifiedCount] = field(default_factory=list)
    rolle_budgets: List[int] = field(default_factory=list)
    checks: List[InequalityCheck] = field(default_factory=list)
    bound_t: Optional[int] = None
    bound_phi: Optional[int] = None
    phi_degrees: Optional[List[int]] = None
    order: List[int] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    @property
    def violations(self) -> List[str]:
        return [f"{c.name}: {c.lhs} > {c.rhs}" for c in self.checks if c.status is CheckStatus.VIOLATED]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def decided(self) -> bool:
        return all(c.exact for c in self.counts) and all(
            c.status is not CheckStatus.UNDECIDED for c in self.checks
        )

    def to_dict(self):
        return {
            "t": self.t,
            "counts": [c.to_dict() for c in self.counts],
            "rolle_budgets": list(self.rolle_budgets),
            "checks": [c.to_dict() for c in self.checks],
            "bound_t": self.bound_t,
            "bound_phi": self.bound_phi,
            "phi_degrees": self.phi_degrees,
            "order": list(self.order),
            "violations": self.violations,
            "errors": list(self.errors),
            "passed": self.passed,
        }


def chain_checks(counts: Sequence[CertifiedCount], budgets: Sequence[int]) -> List[InequalityCheck]:
    """N_j <= N_(j+1) + 2^(j-1) for consecutive stages."""
    checks = []
    for j in range(len(counts) - 1):
        rhs = counts[j + 1].count + budgets[j]
        checks.append(
            InequalityCheck(
                f"N_{j + 1} <= N_{j + 2} + {budgets[j]}",
                counts[j].count,
                rhs,
                compare(counts[j], rhs, counts[j + 1].exact),
            )
        )
    return checks


def check_bounds(
    f: SparsePolyQ2,
    g: SparsePolyQ2,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
    order: Optional[Sequence[int]] = None,
    strict: bool = False,
) -> BoundReport:
    """
    Count every stage of the recursion for f = g = 0 and check the bounds.

    Args:
        f, g: the system; g a trinomial
        precision, max_depth, max_precision: passed to certified_count
        order: optional peeling order for the recursion
        strict: raise TheoremViolation instead of only reporting it

    Returns:
        BoundReport; degenerate systems are reported through errors.
    """
    t = len(f)
    report = BoundReport(t=t, bound_t=bound_t(t) if t >= 3 else None)
    cap = max_precision or DEFAULT_MAX_PRECISION
    try:
        F = to_F(f, g, cap)
    except AllSameSign:
        report.counts.append(CertifiedCount(0, CountStatus.EXACT, [], precision, []))
        return report
    except (FewnomialError, ValueError) as e:
        report.errors.append(f"reduction failed: {type(e).__name__}: {str(e)}")
        return report

    if len(F) < 3:
        report.counts.append(certified_count(F, precision, max_depth, max_precision))
    else:
        try:
            stages = recursion_chain(F, order)
            report.order = list(stages[0].order)
            for stage in stages:
                report.counts.append(certified_count(stage.to_gen_poly(), precision, max_depth, max_precision))
                report.rolle_budgets.append(stage.rolle_budget)
            report.checks.extend(chain_checks(report.counts, report.rolle_budgets))
            phi = build_phi(stages[-1])
            report.phi_degrees = list(phi.degrees(cap))
            report.bound_phi = bound_phi(phi, cap)
            last = report.counts[-1]
            report.checks.append(
                InequalityCheck(
                    f"N_{len(stages)} <= deg P + deg Q + 2", last.count, report.bound_phi, compare(last, report.bound_phi)
                )
            )
            degree_cap = 2 ** (len(F) - 2) - 1
            worst = max(report.phi_degrees)
            report.checks.append(
                InequalityCheck(
                    "max(deg P, deg Q) <= 2^(t-2) - 1",
                    worst,
                    degree_cap,
                    CheckStatus.VIOLATED if worst > degree_cap else CheckStatus.HOLDS,
                )
            )
        except (FewnomialError, ValueError) as e:
            report.errors.append(f"recursion failed: {str(e)}")
            if not report.counts:
                report.counts.append(certified_count(F, precision, max_depth, max_precision))

    if report.bound_t is not None:
        first = report.counts[0]
        report.checks.append(
            InequalityCheck("N_1 <= 3 * 2^(t-2) - 1", first.count, report.bound_t, compare(first, report.bound_t))
        )

    if report.violations:
        logger.error("theorem violation for f = %s, g = %s: %s", f, g, report.to_dict())
        if strict:
            raise TheoremViolation("; ".join(report.violations))
    return report
