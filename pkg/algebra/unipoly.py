"""
Univariate polynomials over the rationals and over RealExpr.

UniPoly carries exact Fraction coefficients; gcd, square-free parts, root
counts and real-root isolation go through sympy polynomials over QQ.
UniPolyR carries RealExpr coefficients; it is reduced to an exact UniPoly
times a common real factor whenever its coefficients allow.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from sympy import QQ, Poly, Rational, Symbol

from algebra.dyadic import DyadicInterval
from algebra.errors import DegreeAmbiguous, NotSquarefree
from algebra.real_expr import (
    DEFAULT_MAX_PRECISION,
    ONE,
    ZERO,
    RealExpr,
    Sign,
    eval_interval,
    sign_of,
    split_rational_multiple,
)

logger = logging.getLogger(__name__)

T = Symbol("t")


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial with Fraction coefficients, index = degree."""

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def constant(cls, c: Fraction) -> "UniPoly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def linear(cls, c0: Fraction, c1: Fraction) -> "UniPoly":
        return cls((Fraction(c0), Fraction(c1)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(tuple(self[i] - other[i] for i in range(n)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coefficients))

    def __mul__(self, other: Union["UniPoly", Fraction, int]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(Fraction(other))
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: Fraction) -> "UniPoly":
        return UniPoly(tuple(c * a for a in self.coefficients))

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def evaluate_interval(self, x: DyadicInterval, bits: Optional[int] = None) -> DyadicInterval:
        acc = DyadicInterval(Fraction(0), Fraction(0))
        for c in reversed(self.coefficients):
            acc = acc.mul(x, bits).add(DyadicInterval.point(c, bits), bits)
        return acc

    def divmod(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        quot, rem = self.as_sympy().div(divisor.as_sympy())
        return UniPoly.from_sympy(quot), UniPoly.from_sympy(rem)

    def monic(self) -> "UniPoly":
        return self.scale(1 / self.leading) if not self.is_zero else self

    def compose_one_minus(self) -> "UniPoly":
        """p(1 - x)."""
        result = UniPoly()
        one_minus = UniPoly.linear(1, -1)
        for c in reversed(self.coefficients):
            result = result * one_minus + UniPoly.constant(c)
        return result

    def cauchy_bound(self) -> Fraction:
        """Power of two strictly larger than the modulus of every root."""
        if self.degree < 1:
            return Fraction(1)
        lead = abs(self.leading)
        bound = 1 + max(abs(c) / lead for c in self.coefficients[:-1])
        power = Fraction(1)
        while power <= bound:
            power *= 2
        return power

    def root_multiplicity(self, x: Fraction) -> int:
        """Multiplicity of the exact rational root x (0 if not a root)."""
        divisor = UniPoly.linear(-x, 1)
        p, count = self, 0
        while not p.is_zero and p(x) == 0:
            p, _ = p.divmod(divisor)
            count += 1
        return count

    def without_root(self, x: Fraction) -> "UniPoly":
        divisor = UniPoly.linear(-x, 1)
        p = self
        while not p.is_zero and p.degree > 0 and p(x) == 0:
            p, _ = p.divmod(divisor)
        return p

    def as_sympy(self) -> Poly:
        return Poly([_rational(c) for c in reversed(self.coefficients)] or [0], T, domain=QQ)

    @classmethod
    def from_sympy(cls, p: Poly) -> "UniPoly":
        return cls(tuple(_fraction(c) for c in reversed(p.all_coeffs())))

    def to_unipoly_r(self) -> "UniPolyR":
        return UniPolyR(tuple(RealExpr.rational(c) for c in self.coefficients))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return " + ".join(parts)

def _rational(q: Fraction) -> Rational:
    return Rational(q.numerator, q.denominator)


def _fraction(r) -> Fraction:
    r = Rational(r)
    return Fraction(int(r.p), int(r.q))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor."""
    if a.is_zero and b.is_zero:
        return UniPoly()
    return UniPoly.from_sympy(a.as_sympy().gcd(b.as_sympy())).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.degree < 1:
        return p
    return UniPoly.from_sympy(p.as_sympy().sqf_part())


def _closed_count(p: UniPoly, a: Fraction, b: Fraction) -> int:
    """Distinct real roots of p in [a, b]."""
    s = squarefree_part(p)
    if s.degree < 1:
        return 0
    return int(s.as_sympy().count_roots(_rational(a), _rational(b)))


def _open_count(p: UniPoly, a: Fraction, b: Fraction) -> int:
    return _closed_count(p, a, b) - (p(a) == 0) - (p(b) == 0)


def sturm_count(p: UniPoly, a: Fraction, b: Fraction) -> int:
    """
    Number of distinct real roots of p in (a, b].

    Args:
        p: non-zero polynomial
        a, b: rational bounds with a < b
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError("sturm_count needs a < b")
    if p.is_zero:
        raise ValueError("sturm_count of the zero polynomial")
    return _closed_count(p, a, b) - (p(a) == 0)


def _box_around(
    s: UniPoly, r: Fraction, left: Fraction, right: Fraction, width: Optional[Fraction]
) -> Tuple[Fraction, Fraction]:
    """Open interval around the exact root r, inside the middle half of (left, right)."""
    radius = min(r - left, right - r) / 2
    if width is not None:
        radius = min(radius, width / 2)
    while s(r - radius) == 0 or s(r + radius) == 0 or _open_count(s, r - radius, r + radius) != 1:
        radius /= 2
    return r - radius, r + radius


def _isolating_box(
    s: UniPoly,
    lo: Fraction,
    hi: Fraction,
    gap: Tuple[Fraction, Fraction],
    bounds: Tuple[Fraction, Fraction],
    width: Optional[Fraction],
) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Turn a closed interval [lo, hi] holding one root of s into an open box.

    gap is the room between the neighbouring intervals. Returns None when
    the root is not strictly inside bounds.
    """
    a, b = bounds
    for end in (a, b):
        if lo <= end <= hi and s(end) == 0:
            return None
    exact = lo if s(lo) == 0 else hi if s(hi) == 0 else None
    if exact is not None:
        if not a < exact < b:
            return None
        left = max(gap[0] if exact == lo else lo, a)
        right = min(gap[1] if exact == hi else hi, b)
        return _box_around(s, exact, left, right, width)
    while True:
        if hi <= a or lo >= b:
            return None
        if a <= lo and hi <= b and (width is None or hi - lo <= width):
            return lo, hi
        mid = (lo + hi) / 2
        v = s(mid)
        if v == 0:
            if not a < mid < b:
                return None
            return _box_around(s, mid, max(lo, a), min(hi, b), width)
        if (v > 0) == (s(lo) > 0):
            lo = mid
        else:
            hi = mid


def isolate_roots(
    p: UniPoly, a: Fraction, b: Fraction, width: Optional[Fraction] = None
) -> List[Tuple[Fraction, Fraction]]:
    """
    Disjoint open intervals (lo, hi), each holding exactly one root of p in (a, b).

    The closed isolating intervals come from sympy; exact rational roots are
    widened into open boxes and every box is clipped to (a, b).

    Args:
        p: polynomial, squarefree on (a, b)
        a, b: bounds with a < b
        width: optional upper bound on the width of each interval

    Returns:
        Intervals sorted left to right; endpoints are never roots.
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError("isolate_roots needs a < b")
    if p.degree < 1:
        return []
    g = poly_gcd(p, p.derivative())
    if g.degree >= 1 and _open_count(g, a, b) > 0:
        raise NotSquarefree(f"{p} has a repeated root in ({a}, {b})")
    s = squarefree_part(p)
    closed = sorted((_fraction(lo), _fraction(hi)) for (lo, hi), _ in s.as_sympy().intervals())
    found: List[Tuple[Fraction, Fraction]] = []
    for i, (lo, hi) in enumerate(closed):
        left = closed[i - 1][1] if i > 0 else a
        right = closed[i + 1][0] if i + 1 < len(closed) else b
        box = _isolating_box(s, lo, hi, (min(left, lo), max(right, hi)), (a, b), width)
        if box is not None:
            found.append(box)
    return found


def refine_root(p: UniPoly, lo: Fraction, hi: Fraction, width: Fraction) -> Tuple[Fraction, Fraction]:
    """Shrink an isolating interval of a simple root by bisection on signs."""
    s_lo = p(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            return mid - width / 4, mid + width / 4
        if (v > 0) == (s_lo > 0):
            lo, s_lo = mid, v
        else:
            hi = mid
    return lo, hi


def real_roots(p: UniPoly, width: Optional[Fraction] = None) -> List[Tuple[Fraction, Fraction]]:
    """Isolating intervals of all distinct real roots of p."""
    s = squarefree_part(p)
    if s.degree < 1:
        return []
    bound = s.cauchy_bound()
    return isolate_roots(s, -bound, bound, width)


# --- polynomials with RealExpr coefficients ---------------------------------

Scalar = Union[RealExpr, Fraction, int]


@dataclass(frozen=True)
class UniPolyR:
    """Dense polynomial with RealExpr coefficients; exact zeros are trimmed."""

    coefficients: Tuple[RealExpr, ...] = ()

    def __post_init__(self):
        coeffs = [RealExpr.coerce(c) for c in self.coefficients]
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "UniPolyR":
        return p.to_unipoly_r()

    @classmethod
    def constant(cls, c: Scalar) -> "UniPolyR":
        return cls((RealExpr.coerce(c),))

    @property
    def structural_degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, i: int) -> RealExpr:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else ZERO

    def __add__(self, other: "UniPolyR") -> "UniPolyR":
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPolyR(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other: "UniPolyR") -> "UniPolyR":
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPolyR(tuple(self[i] - other[i] for i in range(n)))

    def __neg__(self) -> "UniPolyR":
        return UniPolyR(tuple(-c for c in self.coefficients))

    def __mul__(self, other: Union["UniPolyR", UniPoly]) -> "UniPolyR":
        if isinstance(other, UniPoly):
            other = other.to_unipoly_r()
        if self.is_zero or other.is_zero:
            return UniPolyR()
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coefficients):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return UniPolyR(tuple(out))

    def scale(self, c: Scalar) -> "UniPolyR":
        c = RealExpr.coerce(c)
        return UniPolyR(tuple(c * a for a in self.coefficients))

    def derivative(self) -> "UniPolyR":
        return UniPolyR(tuple(a * i for i, a in enumerate(self.coefficients) if i))

    def leading_index(self, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> Optional[int]:
        """Index of the certified-nonzero leading coefficient, None when ambiguous."""
        if self.is_zero:
            return -1
        if sign_of(self.coefficients[-1], max_precision_bits) is Sign.UNDECIDED:
            return None
        return len(self.coefficients) - 1

    def certified_degree(self, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> int:
        index = self.leading_index(max_precision_bits)
        if index is None:
            raise DegreeAmbiguous(f"leading coefficient of {self} cannot be signed")
        return index

    def evaluate_interval(self, x: DyadicInterval, bits: int) -> DyadicInterval:
        acc = DyadicInterval(Fraction(0), Fraction(0))
        for c in reversed(self.coefficients):
            acc = acc.mul(x, bits).add(eval_interval(c, bits), bits)
        return acc

    def to_rational_multiple(self) -> Optional[Tuple[RealExpr, UniPoly]]:
        """
        Factor out a common real multiplier.

        Returns:
            (core, p) with self == core * p and p rational, or None when the
            coefficients do not share a core.
        """
        if self.is_zero:
            return ONE, UniPoly()
        core = None
        rationals = []
        for c in self.coefficients:
            if c.is_zero:
                rationals.append(Fraction(0))
                continue
            r, k = split_rational_multiple(c)
            if core is None:
                core = k
            elif k != core:
                return None
            rationals.append(r)
        return core, UniPoly(tuple(rationals))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c})*x^{i}" for i, c in enumerate(self.coefficients) if not c.is_zero)
