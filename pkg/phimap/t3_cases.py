"""Ordering cases of p~ = alpha1/(alpha1+beta1) and q~ = alpha2/(alpha2+beta2) for t = 3."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from reduction.phi_map import NondegeneracyViolated, PhiMap
from rootcount.certified_count import CertifiedCount

logger = logging.getLogger(__name__)

# beta1 > beta2 allows the first two, beta1 < beta2 the last two
ORDERINGS: Dict[str, Callable[[Fraction, Fraction], bool]] = {
    "p < q < 0": lambda p, q: p < q < 0,
    "1 < q < p": lambda p, q: 1 < q < p,
    "0 < q < 1 < p": lambda p, q: 0 < q < 1 < p,
    "q < 0 < p < 1": lambda p, q: q < 0 < p < 1,
}
_BETA_DECREASING = ("p < q < 0", "1 < q < p")
_BETA_INCREASING = ("0 < q < 1 < p", "q < 0 < p < 1")


@dataclass(frozen=True)
class CaseReport:
    p_tilde: Fraction
    q_tilde: Fraction
    beta_order: str
    holding: List[str]
    count: Optional[int]
    consistent: Optional[bool]

    def to_dict(self):
        return {
            "p_tilde": str(self.p_tilde),
            "q_tilde": str(self.q_tilde),
            "beta_order": self.beta_order,
            "holding": list(self.holding),
            "count": self.count,
            "consistent": self.consistent,
        }


def t3_landmark_case(phi: PhiMap, count: Optional[CertifiedCount] = None) -> CaseReport:
    """
    Which ordering of p~ and q~ holds for a phi built by t3_phi.

    consistent is None unless the system has exactly five certified
    solutions; then it says whether exactly one ordering holds and it is
    one allowed by the order of beta1 and beta2.

    Raises:
        NondegeneracyViolated: the trinomial data fails a nondegeneracy condition
    """
    data = phi.trinomial
    if data is None:
        raise ValueError("t3_landmark_case needs the phi of a trinomial f")
    violations = data.violations()
    if violations:
        raise NondegeneracyViolated("; ".join(violations))
    p, q = data.p_tilde, data.q_tilde
    holding = [name for name, holds in ORDERINGS.items() if holds(p, q)]
    beta_order = "beta1 > beta2" if data.beta1 > data.beta2 else "beta1 < beta2"
    n = count.count if count is not None and count.exact else None
    consistent = None
    if n == 5:
        allowed = _BETA_DECREASING if data.beta1 > data.beta2 else _BETA_INCREASING
        consistent = len(holding) == 1 and holding[0] in allowed and p != q
        if not consistent:
            logger.error("five solutions but p~ = %s, q~ = %s fit %s", p, q, holding or "no ordering")
    return CaseReport(p, q, beta_order, holding, n, consistent)
