"""
Exact real expressions with certified interval evaluation.

A RealExpr is an immutable DAG whose leaves are constants of the form
``coefficient * prod(base ** exponent)`` with a rational coefficient,
integer bases and exponents in (0, 1). Products, quotients and rational
powers of such constants are folded exactly, so the coefficients created
by monomial changes of coordinates stay in closed form. Everything else
becomes an internal node that is only ever evaluated to intervals.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from sympy import factorint

from algebra.dyadic import DyadicInterval
from algebra.errors import PowOfNonpositive, UndecidedCoefficient, ZeroDivisorUndecided

logger = logging.getLogger(__name__)

DEFAULT_MAX_PRECISION = 4096
CONSTRUCTION_PRECISION = 1024
GUARD_BITS = 16
TRIAL_DIVISION_LIMIT = 1 << 16

Number = Union[int, Fraction]
Radicals = Tuple[Tuple[int, Fraction], ...]


class ExprKind(Enum):
    CONST = "const"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    POW = "pow"


class Sign(Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    UNDECIDED = "undecided"

    def as_int(self) -> int:
        return {Sign.NEGATIVE: -1, Sign.POSITIVE: 1, Sign.UNDECIDED: 0}[self]


@dataclass(frozen=True)
class RealExpr:
    """Node of an exact real expression DAG."""

    kind: ExprKind
    coefficient: Fraction = Fraction(0)
    radicals: Radicals = ()
    children: Tuple["RealExpr", ...] = ()
    exponent: Optional[Fraction] = None
    _hash: int = field(default=0, compare=False, repr=False)
    _intervals: Dict[int, DyadicInterval] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "_hash",
            hash((self.kind, self.coefficient, self.radicals, self.children, self.exponent)),
        )

    def __hash__(self) -> int:
        return self._hash

    # --- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, value: Number) -> "RealExpr":
        value = Fraction(value)
        if value == 0:
            return ZERO
        return cls(ExprKind.CONST, coefficient=value)

    @classmethod
    def coerce(cls, value: Union["RealExpr", Number]) -> "RealExpr":
        if isinstance(value, RealExpr):
            return value
        return cls.rational(value)

    # --- structural queries -----------------------------------------------

    @property
    def is_const(self) -> bool:
        return self.kind is ExprKind.CONST

    @property
    def is_rational(self) -> bool:
        return self.kind is ExprKind.CONST and not self.radicals

    @property
    def is_zero(self) -> bool:
        """Exact structural zero; never decided by evaluation."""
        return self.kind is ExprKind.CONST and self.coefficient == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coefficient

    # --- operators ---------------------------------------------------------

    def __add__(self, other):
        return add(self, RealExpr.coerce(other))

    def __radd__(self, other):
        return add(RealExpr.coerce(other), self)

    def __sub__(self, other):
        return sub(self, RealExpr.coerce(other))

    def __rsub__(self, other):
        return sub(RealExpr.coerce(other), self)

    def __mul__(self, other):
        return mul(self, RealExpr.coerce(other))

    def __rmul__(self, other):
        return mul(RealExpr.coerce(other), self)

    def __truediv__(self, other):
        return div(self, RealExpr.coerce(other))

    def __rtruediv__(self, other):
        return div(RealExpr.coerce(other), self)

    def __neg__(self):
        return mul(MINUS_ONE, self)

    def __pow__(self, exponent: Number):
        return power(self, Fraction(exponent))

    def __str__(self) -> str:
        return render(self)


ZERO = RealExpr(ExprKind.CONST, coefficient=Fraction(0))
ONE = RealExpr(ExprKind.CONST, coefficient=Fraction(1))
MINUS_ONE = RealExpr(ExprKind.CONST, coefficient=Fraction(-1))


# --- exact folding of constants -------------------------------------------

def _factor_positive_int(n: int) -> Dict[int, int]:
    if n == 1:
        return {}
    return {int(p): int(e) for p, e in factorint(n, limit=TRIAL_DIVISION_LIMIT).items()}


def _factor_positive_rational(q: Fraction) -> Dict[int, int]:
    factors = dict(_factor_positive_int(q.numerator))
    for p, e in _factor_positive_int(q.denominator).items():
        factors[p] = factors.get(p, 0) - e
    return factors


def _const(coefficient: Fraction, radicals: Dict[int, Fraction]) -> RealExpr:
    """Normalize to exponents in (0, 1), carrying integer parts into the coefficient."""
    coefficient = Fraction(coefficient)
    if coefficient == 0:
        return ZERO
    parts = []
    for base in sorted(radicals):
        exp = Fraction(radicals[base])
        whole = exp.numerator // exp.denominator
        if whole:
            coefficient *= Fraction(base) ** whole
            exp -= whole
        if exp:
            parts.append((base, exp))
    return RealExpr(ExprKind.CONST, coefficient=coefficient, radicals=tuple(parts))


def _merge(a: Radicals, b: Radicals, sign: int = 1) -> Dict[int, Fraction]:
    merged: Dict[int, Fraction] = dict(a)
    for base, exp in b:
        merged[base] = merged.get(base, Fraction(0)) + sign * exp
    return merged


def _parts(e: RealExpr) -> Tuple[Fraction, Radicals, Optional[RealExpr]]:
    """Split e as coefficient * radicals * rest (rest None when e is constant)."""
    if e.kind is ExprKind.CONST:
        return e.coefficient, e.radicals, None
    if e.kind is ExprKind.MUL and e.children[0].kind is ExprKind.CONST:
        head = e.children[0]
        return head.coefficient, head.radicals, e.children[1]
    return Fraction(1), (), e


def _from_parts(coefficient: Fraction, radicals: Dict[int, Fraction], rest: Optional[RealExpr]) -> RealExpr:
    head = _const(coefficient, radicals)
    if rest is None or head.is_zero:
        return head
    if head == ONE:
        return rest
    return RealExpr(ExprKind.MUL, children=(head, rest))


def split_rational_multiple(e: RealExpr) -> Tuple[Fraction, RealExpr]:
    """Write e = r * core with r rational; cores compare structurally."""
    coefficient, radicals, rest = _parts(e)
    return coefficient, _from_parts(Fraction(1), dict(radicals), rest)


def add(a: RealExpr, b: RealExpr) -> RealExpr:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    ca, ra, xa = _parts(a)
    cb, rb, xb = _parts(b)
    if ra == rb and xa == xb:
        return _from_parts(ca + cb, dict(ra), xa)
    return RealExpr(ExprKind.ADD, children=(a, b))


def sub(a: RealExpr, b: RealExpr) -> RealExpr:
    if b.is_zero:
        return a
    if a.is_zero:
        return mul(MINUS_ONE, b)
    ca, ra, xa = _parts(a)
    cb, rb, xb = _parts(b)
    if ra == rb and xa == xb:
        return _from_parts(ca - cb, dict(ra), xa)
    return RealExpr(ExprKind.SUB, children=(a, b))


def mul(a: RealExpr, b: RealExpr) -> RealExpr:
    if a.is_zero or b.is_zero:
        return ZERO
    ca, ra, xa = _parts(a)
    cb, rb, xb = _parts(b)
    if xa is None:
        rest = xb
    elif xb is None:
        rest = xa
    else:
        rest = RealExpr(ExprKind.MUL, children=(xa, xb))
    return _from_parts(ca * cb, _merge(ra, rb), rest)


def div(a: RealExpr, b: RealExpr) -> RealExpr:
    if b.is_zero:
        raise ZeroDivisionError("division by exact zero")
    if a.is_zero:
        return ZERO
    ca, ra, xa = _parts(a)
    cb, rb, xb = _parts(b)
    if xb is None:
        return _from_parts(ca / cb, _merge(ra, rb, -1), xa)
    if xa == xb:
        return _from_parts(ca / cb, _merge(ra, rb, -1), None)
    return RealExpr(ExprKind.DIV, children=(a, b))


def _const_power(e: RealExpr, exponent: Fraction) -> RealExpr:
    if exponent.denominator == 1:
        n = exponent.numerator
        if e.coefficient == 0 and n < 0:
            raise ZeroDivisionError("zero to a negative power")
        scaled = {base: exp * n for base, exp in e.radicals}
        return _const(e.coefficient ** n, scaled)
    if e.coefficient < 0:
        raise PowOfNonpositive(f"({render(e)}) ** {exponent}")
    if e.coefficient == 0:
        if exponent < 0:
            raise PowOfNonpositive(f"0 ** {exponent}")
        return ZERO
    radicals = {base: Fraction(exp) * exponent for base, exp in _factor_positive_rational(e.coefficient).items()}
    for base, exp in e.radicals:
        radicals[base] = radicals.get(base, Fraction(0)) + exp * exponent
    return _const(Fraction(1), radicals)


def power(a: RealExpr, exponent: Fraction) -> RealExpr:
    """a ** exponent; non-integer exponents require a certified positive operand."""
    exponent = Fraction(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return a
    if a.is_const:
        return _const_power(a, exponent)
    coefficient, radicals, rest = _parts(a)
    if exponent.denominator == 1:
        head = _const_power(_const(coefficient, dict(radicals)), exponent)
        return mul(head, RealExpr(ExprKind.POW, children=(rest,), exponent=exponent))
    if coefficient > 0:
        if sign_of(rest, CONSTRUCTION_PRECISION) is not Sign.POSITIVE:
            raise PowOfNonpositive(f"({render(rest)}) ** {exponent}")
        head = _const_power(_const(coefficient, dict(radicals)), exponent)
        return mul(head, RealExpr(ExprKind.POW, children=(rest,), exponent=exponent))
    if sign_of(a, CONSTRUCTION_PRECISION) is not Sign.POSITIVE:
        raise PowOfNonpositive(f"({render(a)}) ** {exponent}")
    return RealExpr(ExprKind.POW, children=(a,), exponent=exponent)


def radical(base: Number, exponent: Number) -> RealExpr:
    """Exact base ** exponent for a rational base."""
    return power(RealExpr.rational(base), Fraction(exponent))


# --- certified evaluation --------------------------------------------------

def _enclose(e: RealExpr, bits: int) -> DyadicInterval:
    cached = e._intervals.get(bits)
    if cached is not None:
        return cached
    if e.kind is ExprKind.CONST:
        result = DyadicInterval.point(e.coefficient, bits)
        for base, exp in e.radicals:
            factor = DyadicInterval.point(Fraction(base)).pow_rat(exp, bits)
            result = result.mul(factor, bits)
    elif e.kind is ExprKind.POW:
        result = _enclose(e.children[0], bits).pow_rat(e.exponent, bits)
    else:
        left = _enclose(e.children[0], bits)
        right = _enclose(e.children[1], bits)
        if e.kind is ExprKind.ADD:
            result = left.add(right, bits)
        elif e.kind is ExprKind.SUB:
            result = left.sub(right, bits)
        elif e.kind is ExprKind.MUL:
            result = left.mul(right, bits)
        else:
            result = left.div(right, bits)
    e._intervals[bits] = result
    return result


def _narrow_enough(iv: DyadicInterval, precision_bits: int) -> bool:
    scale = max(Fraction(1), abs(iv.midpoint))
    return iv.width * (1 << (precision_bits - 4)) <= scale


def eval_interval(e: RealExpr, precision_bits: int) -> DyadicInterval:
    """
    Certified enclosure of the value of e.

    Args:
        e: expression to evaluate
        precision_bits: requested precision; the result has width at most
            2^(4 - precision_bits) * max(1, |midpoint|)

    Returns:
        DyadicInterval containing the exact value; repeated calls never
        return a wider interval than an earlier, more precise one.
    """
    if precision_bits < 4:
        raise ValueError("precision_bits must be at least 4")
    work = precision_bits + GUARD_BITS
    cap = 8 * precision_bits + 256
    best: Optional[DyadicInterval] = None
    failure: Optional[Exception] = None
    while work <= cap:
        try:
            candidate = _enclose(e, work)
        except (PowOfNonpositive, ZeroDivisorUndecided) as exc:
            failure = exc
            work *= 2
            continue
        best = candidate if best is None else (best.intersect(candidate) or candidate)
        if _narrow_enough(best, precision_bits):
            break
        work *= 2
    if best is None:
        raise failure
    known = e._intervals.get(0)
    if known is not None:
        best = best.intersect(known) or best
    e._intervals[0] = best
    return best


def sign_of(e: RealExpr, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> Sign:
    """Certified sign by geometric precision refinement; UNDECIDED when 0 stays inside."""
    coefficient, _, rest = _parts(e)
    if rest is None or coefficient == 0:
        if coefficient > 0:
            return Sign.POSITIVE
        if coefficient < 0:
            return Sign.NEGATIVE
        return Sign.UNDECIDED
    if coefficient < 0:
        inner = sign_of(rest, max_precision_bits)
        return {Sign.POSITIVE: Sign.NEGATIVE, Sign.NEGATIVE: Sign.POSITIVE}.get(inner, Sign.UNDECIDED)
    if rest is not e:
        return sign_of(rest, max_precision_bits)
    bits = 32
    while True:
        try:
            iv = eval_interval(e, bits)
        except (PowOfNonpositive, ZeroDivisorUndecided):
            iv = None
        if iv is not None and iv.lo > 0:
            return Sign.POSITIVE
        if iv is not None and iv.hi < 0:
            return Sign.NEGATIVE
        if bits >= max_precision_bits:
            logger.debug("sign undecided at %d bits for %s", bits, render(e))
            return Sign.UNDECIDED
        bits = min(2 * bits, max_precision_bits)


def certified_sign(e: RealExpr, max_precision_bits: int = DEFAULT_MAX_PRECISION) -> int:
    """+1 or -1; raises UndecidedCoefficient when the sign cannot be certified."""
    s = sign_of(e, max_precision_bits)
    if s is Sign.UNDECIDED:
        raise UndecidedCoefficient(f"sign of {render(e)} is undecided")
    return s.as_int()


def render(e: RealExpr) -> str:
    if e.kind is ExprKind.CONST:
        text = str(e.coefficient)
        for base, exp in e.radicals:
            text += f"*{base}^({exp})"
        return text
    if e.kind is ExprKind.POW:
        return f"({render(e.children[0])})^({e.exponent})"
    symbol = {ExprKind.ADD: "+", ExprKind.SUB: "-", ExprKind.MUL: "*", ExprKind.DIV: "/"}[e.kind]
    return f"({render(e.children[0])} {symbol} {render(e.children[1])})"
