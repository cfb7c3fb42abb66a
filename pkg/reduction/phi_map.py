"""
The rational map phi(x) = x^alpha (1-x)^beta P(x) / Q(x).

build_phi reads phi off the last stage of the derivative recursion;
t3_phi gives the closed form for a trinomial f, where phi = 1 exactly at
the critical points of f restricted to the curve g = 0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError
from algebra.real_expr import DEFAULT_MAX_PRECISION, RealExpr, render
from algebra.unipoly import UniPoly, UniPolyR
from bivar.monomial_map import apply_map, normalize_trinomial_lattice, normalize_trinomial_unit
from bivar.sparse_poly import AllSameSign, Exponent, SparsePolyQ2
from reduction.gen_poly import GenPoly
from reduction.layered import LayerCountMismatch, LayeredRep

logger = logging.getLogger(__name__)


class NondegeneracyViolated(FewnomialError):
    """A trinomial-pair nondegeneracy condition fails."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class TrinomialData:
    """Exponents and coefficients of f = -1 + a1 x^alpha1 (1-x)^beta1 + a2 x^alpha2 (1-x)^beta2."""

    alpha1: Fraction
    beta1: Fraction
    alpha2: Fraction
    beta2: Fraction
    a1: RealExpr
    a2: RealExpr
    k3: int
    k4: int
    l4: int
    divided_term: Exponent

    @property
    def p_tilde(self) -> Optional[Fraction]:
        s = self.alpha1 + self.beta1
        return self.alpha1 / s if s else None

    @property
    def q_tilde(self) -> Optional[Fraction]:
        s = self.alpha2 + self.beta2
        return self.alpha2 / s if s else None

    def violations(self) -> List[str]:
        found = []
        if self.alpha1 - self.alpha2 == self.beta2 - self.beta1:
            found.append("alpha1 - alpha2 == beta2 - beta1")
        if self.alpha1 == self.alpha2:
            found.append("alpha1 == alpha2")
        if self.beta1 == self.beta2:
            found.append("beta1 == beta2")
        for i, (a, b) in enumerate(((self.alpha1, self.beta1), (self.alpha2, self.beta2)), start=1):
            if a + b == 0:
                found.append(f"alpha{i} + beta{i} == 0")
            if a == 0:
                found.append(f"alpha{i} == 0")
            if b == 0:
                found.append(f"beta{i} == 0")
        return found


@dataclass(frozen=True)
class PhiMap:
    alpha: Fraction
    beta: Fraction
    P: UniPolyR
    Q: UniPolyR
    m: int
    prefactor_sign: int = 1
    trinomial: Optional[TrinomialData] = None
    nondegeneracy_violations: Tuple[str, ...] = ()

    @classmethod
    def from_rational(cls, alpha: Fraction, beta: Fraction, P: UniPoly, Q: UniPoly) -> "PhiMap":
        alpha, beta = Fraction(alpha), Fraction(beta)
        return cls(alpha, beta, P.to_unipoly_r(), Q.to_unipoly_r(), _lcm(alpha.denominator, beta.denominator))

    def inverse(self) -> "PhiMap":
        return PhiMap(-self.alpha, -self.beta, self.Q, self.P, self.m, self.prefactor_sign)

    def degrees(self, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> Tuple[int, int]:
        return self.P.certified_degree(max_precision_bits), self.Q.certified_degree(max_precision_bits)

    def to_gen_poly(self, target: int = 1) -> GenPoly:
        """x^alpha (1-x)^beta P - target * Q; its roots in (0,1) solve phi = target."""
        items = []
        for d, c in enumerate(self.P.coefficients):
            if not c.is_zero:
                items.append((c * self.prefactor_sign, self.alpha + d, self.beta))
        for d, c in enumerate(self.Q.coefficients):
            if not c.is_zero:
                items.append((c * (-target), Fraction(d), Fraction(0)))
        return GenPoly.from_terms(items)

    def evaluate(self, x: DyadicInterval, bits: int) -> DyadicInterval:
        """Enclosure of phi over x inside (0, 1); raises when Q may vanish on x."""
        one_minus = DyadicInterval(1 - x.hi, 1 - x.lo)
        value = self.P.evaluate_interval(x, bits).div(self.Q.evaluate_interval(x, bits), bits)
        value = value.mul(x.pow_rat(self.alpha, bits), bits).mul(one_minus.pow_rat(self.beta, bits), bits)
        return value.scale(self.prefactor_sign, bits)

    def to_dict(self):
        data = {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "P": [render(c) for c in self.P.coefficients],
            "Q": [render(c) for c in self.Q.coefficients],
            "m": self.m,
            "prefactor_sign": self.prefactor_sign,
            "nondegeneracy_violations": list(self.nondegeneracy_violations),
        }
        if self.trinomial is not None:
            t = self.trinomial
            data["trinomial"] = {
                "alpha1": str(t.alpha1),
                "beta1": str(t.beta1),
                "alpha2": str(t.alpha2),
                "beta2": str(t.beta2),
                "k3": t.k3,
                "k4": t.k4,
                "l4": t.l4,
                "divided_term": [str(c) for c in t.divided_term],
            }
        return data


def build_phi(last: LayeredRep) -> PhiMap:
    """
    Read phi off f_(t-1) = -Q + x^alpha (1-x)^beta P.

    Raises:
        LayerCountMismatch: unless there are exactly two layers with
            distinct exponent pairs
    """
    if len(last.layers) != 2:
        raise LayerCountMismatch(f"expected 2 layers, got {len(last.layers)}")
    lead, tail = last.layers
    alpha, beta = tail.m - lead.m, tail.n - lead.n
    if alpha == 0 and beta == 0:
        raise LayerCountMismatch("both layers carry the same exponents")
    return PhiMap(alpha, beta, tail.h, -lead.h, _lcm(alpha.denominator, beta.denominator))


def t3_phi(f: SparsePolyQ2, g: SparsePolyQ2, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> PhiMap:
    """
    Closed-form phi for a trinomial f.

    f is divided by minus one of its terms, chosen so that the two other
    coefficients have opposite signs, and rewritten in the lattice
    coordinates of g. Indices are swapped so that alpha1 > alpha2.
    """
    if len(f) != 3:
        raise ValueError(f"t3_phi needs a trinomial f, got {len(f)} terms")
    lattice_map, k3, k4, l4 = normalize_trinomial_lattice(g, max_precision_bits)
    unit_map = normalize_trinomial_unit(g, max_precision_bits)
    signs = f.signs(max_precision_bits)
    if abs(sum(signs)) == 3:
        raise AllSameSign(f"all coefficients of {f} have sign {signs[0]}")
    majority = 1 if sum(signs) > 0 else -1
    pivot = f.terms[signs.index(majority)]
    normalized = f.divided_by(-pivot.coefficient, pivot.exponent)
    transformed = apply_map(normalized, lattice_map.without_divisor())
    others = [t for t in transformed.terms if t.exponent != (0, 0)]
    if len(others) != 2:
        raise ValueError(f"f collapses to {len(others) + 1} terms in lattice coordinates")
    data = []
    for term in others:
        k, l = term.exponent
        data.append(((k * l4 - k4 * l) / (k3 * l4), l / l4, term.coefficient))
    (alpha1, beta1, a1), (alpha2, beta2, a2) = data
    if alpha1 < alpha2:
        (alpha1, beta1, a1), (alpha2, beta2, a2) = (alpha2, beta2, a2), (alpha1, beta1, a1)
    trinomial = TrinomialData(
        alpha1, beta1, alpha2, beta2, a1, a2, k3, k4, l4, unit_map.map_exponent(pivot.exponent)
    )
    violations = tuple(trinomial.violations())
    for v in violations:
        logger.warning("nondegeneracy condition fails: %s", v)
    rho1 = UniPoly.linear(alpha1, -(alpha1 + beta1)).to_unipoly_r()
    rho2 = UniPoly.linear(alpha2, -(alpha2 + beta2)).to_unipoly_r()
    P = rho1.scale(-a1 / a2)
    alpha, beta = alpha1 - alpha2, beta1 - beta2
    return PhiMap(
        alpha,
        beta,
        P,
        rho2,
        _lcm(alpha.denominator, beta.denominator),
        1,
        trinomial,
        violations,
    )
