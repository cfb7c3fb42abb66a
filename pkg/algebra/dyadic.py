"""
Outward-rounded interval arithmetic on dyadic endpoints.

Every operation takes an explicit working precision `bits` and rounds the
lower endpoint toward -inf and the upper endpoint toward +inf to a dyadic
rational with about `bits` significant bits, so results always enclose the
exact value. Passing ``bits=None`` keeps endpoints exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from sympy import integer_nthroot

from algebra.errors import PowOfNonpositive, ZeroDivisorUndecided


def is_dyadic(q: Fraction) -> bool:
    """True when the denominator of q is a power of two."""
    d = Fraction(q).denominator
    return d & (d - 1) == 0


def round_dyadic(q: Fraction, bits: Optional[int], upward: bool) -> Fraction:
    """Round q to a dyadic rational with about `bits` significant bits."""
    q = Fraction(q)
    if q == 0 or bits is None:
        return q
    num, den = q.numerator, q.denominator
    if den & (den - 1) == 0 and abs(num).bit_length() <= bits:
        return q
    shift = bits - (abs(num).bit_length() - den.bit_length())
    if shift >= 0:
        scaled_num, scaled_den = num << shift, den
    else:
        scaled_num, scaled_den = num, den << (-shift)
    if upward:
        mantissa = -((-scaled_num) // scaled_den)
    else:
        mantissa = scaled_num // scaled_den
    if shift >= 0:
        return Fraction(mantissa, 1 << shift)
    return Fraction(mantissa << (-shift))


def _pow_int_bound(x: Fraction, n: int, bits: Optional[int], upward: bool) -> Fraction:
    # x >= 0, so every partial product is monotone in its factors
    result = Fraction(1)
    base = x
    while n:
        if n & 1:
            result = round_dyadic(result * base, bits, upward)
        n >>= 1
        if n:
            base = round_dyadic(base * base, bits, upward)
    return result


def _root_bound(value: Fraction, q: int, bits: Optional[int], upward: bool) -> Fraction:
    """Dyadic lower/upper bound on value ** (1/q) for value > 0."""
    if q == 1:
        return round_dyadic(value, bits, upward)
    target = bits if bits is not None else 64
    mag = value.numerator.bit_length() - value.denominator.bit_length()
    s = target + 2 - mag // q
    shift = q * s
    if shift >= 0:
        num, den = value.numerator << shift, value.denominator
    else:
        num, den = value.numerator, value.denominator << (-shift)
    scaled = -((-num) // den) if upward else num // den
    root, exact = integer_nthroot(scaled, q)
    root = int(root)
    if upward and not exact:
        root += 1
    if s >= 0:
        return Fraction(root, 1 << s)
    return Fraction(root << (-s))


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval [lo, hi] with dyadic endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Fraction, bits: Optional[int] = None) -> "DyadicInterval":
        q = Fraction(q)
        if is_dyadic(q) and bits is None:
            return cls(q, q)
        if bits is None:
            bits = 64
        return cls(round_dyadic(q, bits, False), round_dyadic(q, bits, True))

    @classmethod
    def around(cls, lo: Fraction, hi: Fraction, bits: Optional[int]) -> "DyadicInterval":
        return cls(round_dyadic(lo, bits, False), round_dyadic(hi, bits, True))

    # --- queries -----------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: Fraction) -> bool:
        return self.lo <= q <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1 or -1 when certified, 0 when the interval touches zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> Fraction:
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def overlaps(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "DyadicInterval") -> Optional["DyadicInterval"]:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return DyadicInterval(lo, hi)

    def hull(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def bisect(self) -> Tuple["DyadicInterval", "DyadicInterval"]:
        mid = self.midpoint
        return DyadicInterval(self.lo, mid), DyadicInterval(mid, self.hi)

    # --- arithmetic --------------------------------------------------------

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi, -self.lo)

    def add(self, other: "DyadicInterval", bits: Optional[int] = None) -> "DyadicInterval":
        return DyadicInterval.around(self.lo + other.lo, self.hi + other.hi, bits)

    def sub(self, other: "DyadicInterval", bits: Optional[int] = None) -> "DyadicInterval":
        return DyadicInterval.around(self.lo - other.hi, self.hi - other.lo, bits)

    def mul(self, other: "DyadicInterval", bits: Optional[int] = None) -> "DyadicInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return DyadicInterval.around(min(products), max(products), bits)

    def scale(self, factor: Fraction, bits: Optional[int] = None) -> "DyadicInterval":
        factor = Fraction(factor)
        a, b = self.lo * factor, self.hi * factor
        return DyadicInterval.around(min(a, b), max(a, b), bits)

    def div(self, other: "DyadicInterval", bits: Optional[int] = None) -> "DyadicInterval":
        if other.contains_zero():
            raise ZeroDivisorUndecided(f"divisor {other} contains zero")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return DyadicInterval.around(min(quotients), max(quotients), bits)

    def pow_int(self, n: int, bits: Optional[int] = None) -> "DyadicInterval":
        if n < 0:
            return DyadicInterval(Fraction(1), Fraction(1)).div(self.pow_int(-n, bits), bits)
        if n == 0:
            return DyadicInterval(Fraction(1), Fraction(1))
        lo_abs, hi_abs = abs(self.lo), abs(self.hi)
        if self.lo >= 0:
            return DyadicInterval(
                _pow_int_bound(self.lo, n, bits, False),
                _pow_int_bound(self.hi, n, bits, True),
            )
        if self.hi <= 0:
            low = _pow_int_bound(hi_abs, n, bits, False)
            high = _pow_int_bound(lo_abs, n, bits, True)
            if n % 2 == 0:
                return DyadicInterval(low, high)
            return DyadicInterval(-high, -low)
        if n % 2 == 0:
            return DyadicInterval(Fraction(0), _pow_int_bound(max(lo_abs, hi_abs), n, bits, True))
        return DyadicInterval(
            -_pow_int_bound(lo_abs, n, bits, True),
            _pow_int_bound(hi_abs, n, bits, True),
        )

    def pow_rat(self, exponent: Fraction, bits: Optional[int] = None) -> "DyadicInterval":
        """Enclosure of x ** exponent; non-integer exponents need lo >= 0."""
        exponent = Fraction(exponent)
        if exponent.denominator == 1:
            return self.pow_int(exponent.numerator, bits)
        if self.lo < 0 or (self.lo == 0 and exponent < 0):
            raise PowOfNonpositive(f"{self} ** {exponent}")
        p, q = abs(exponent.numerator), exponent.denominator
        if self.lo > 0:
            lower = _root_bound(_pow_int_bound(self.lo, p, bits, False), q, bits, False)
        else:
            lower = Fraction(0)
        if self.hi > 0:
            upper = _root_bound(_pow_int_bound(self.hi, p, bits, True), q, bits, True)
        else:
            upper = Fraction(0)
        if exponent > 0:
            return DyadicInterval(lower, upper)
        return DyadicInterval(round_dyadic(1 / upper, bits, False), round_dyadic(1 / lower, bits, True))

    def __str__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


UNIT = DyadicInterval(Fraction(0), Fraction(1))
