"""
Real-line landmarks of phi and the inequalities they satisfy.

Phases of analyze_phi:
1. Absorb exact roots of P and Q at 0 and 1 into alpha and beta
2. Isolate the roots of P and Q, the critical points, and the solutions of phi^m = 1
3. Separate every isolating interval and order the landmarks along the projective line
4. Count S0, flat, flat_plus and the useful positive critical points
5. Check the window and Rolle-type inequalities against the certified count
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from algebra.dyadic import DyadicInterval
from algebra.errors import FewnomialError, PowOfNonpositive, ZeroDivisorUndecided
from algebra.real_expr import DEFAULT_MAX_PRECISION, RealExpr, sign_of
from algebra.unipoly import UniPoly, UniPolyR, isolate_roots, poly_gcd, real_roots, refine_root, squarefree_part, sturm_count
from reduction.phi_map import PhiMap
from rootcount.bounds import CheckStatus, InequalityCheck, TheoremViolation, bound_phi, compare
from rootcount.certified_count import CertifiedCount, CountStatus, count_phi_solutions
from rootcount.isolation import (
    EnclosedFunction,
    GenPolyFunction,
    PolynomialFunction,
    isolate_polynomial_roots,
    refine_sign_change,
    root_bound,
)

logger = logging.getLogger(__name__)


class UndecidedSeparation(FewnomialError):
    """Two landmark intervals still overlap at the precision cap."""


class UndecidedSign(FewnomialError):
    """The sign of phi at a point cannot be certified."""


class CommonRoot(FewnomialError):
    """P and Q share a root."""


class LandmarkKind(Enum):
    LETTER_P = "letter_p"
    LETTER_Q = "letter_q"
    LETTER_R_PLUS = "letter_r_plus"
    LETTER_R_MINUS = "letter_r_minus"
    NONSPECIAL_CRITICAL = "nonspecial_critical"


@dataclass(frozen=True)
class Landmark:
    """A point of B on the real projective line; tag names the fixed points 0, 1 and inf."""

    kind: LandmarkKind
    location: Optional[DyadicInterval]
    tag: str = ""
    phi_sign_at: int = 0
    multiplicity_note: str = ""

    @property
    def at_infinity(self) -> bool:
        return self.tag == "inf"

    @property
    def interior(self) -> bool:
        return not self.tag and self.location.lo > 0 and self.location.hi < 1

    @property
    def is_letter_r(self) -> bool:
        return self.kind in (LandmarkKind.LETTER_R_PLUS, LandmarkKind.LETTER_R_MINUS)

    @property
    def is_special(self) -> bool:
        return self.kind in (LandmarkKind.LETTER_P, LandmarkKind.LETTER_Q)

    def sort_key(self) -> Tuple[int, Fraction]:
        return (1, Fraction(0)) if self.at_infinity else (0, self.location.lo)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "location": self.tag or [str(self.location.lo), str(self.location.hi)],
            "phi_sign_at": self.phi_sign_at,
            "multiplicity_note": self.multiplicity_note,
        }


# --- the two polynomials behind phi' -----------------------------------------

def phi_prime_numerator(phi: PhiMap) -> UniPolyR:
    """
    H with phi' = x^(alpha-1) (1-x)^(beta-1) H / Q^2:
    alpha P Q + (P'Q - PQ' - (alpha+beta) P Q) x + (PQ' - P'Q) x^2.
    """
    P, Q = phi.P.scale(phi.prefactor_sign), phi.Q
    PQ = P * Q
    W = P.derivative() * Q - P * Q.derivative()
    x, x2 = UniPoly.x(), UniPoly((Fraction(0), Fraction(0), Fraction(1)))
    return PQ.scale(phi.alpha) + W * x - PQ * UniPoly((Fraction(0), phi.alpha + phi.beta)) - W * x2


def critical_polynomial(phi: PhiMap) -> UniPolyR:
    """H with the factors x and 1 - x removed when alpha or beta vanish."""
    P, Q = phi.P.scale(phi.prefactor_sign), phi.Q
    W = P.derivative() * Q - P * Q.derivative()
    a, b = phi.alpha, phi.beta
    if a and b:
        lin, factor = UniPoly.linear(a, -(a + b)), UniPoly((Fraction(0), Fraction(1), Fraction(-1)))
    elif b:
        lin, factor = UniPoly.constant(-b), UniPoly.linear(1, -1)
    elif a:
        lin, factor = UniPoly.constant(a), UniPoly.x()
    else:
        lin, factor = UniPoly(), UniPoly.constant(Fraction(1))
    return (P * Q) * lin + W * factor


def _split(p: UniPolyR) -> Optional[Tuple[RealExpr, UniPoly]]:
    split = p.to_rational_multiple()
    if split is None or split[1].is_zero:
        return None
    return split


def absorb_endpoint_roots(phi: PhiMap) -> PhiMap:
    """Move exact roots of P and Q at 0 and 1 into alpha and beta."""
    alpha, beta = phi.alpha, phi.beta
    polys = []
    for sign, poly in ((1, phi.P), (-1, phi.Q)):
        coeffs = list(poly.coefficients)
        while len(coeffs) > 1 and coeffs[0].is_zero:
            coeffs.pop(0)
            alpha += sign
        poly = UniPolyR(tuple(coeffs))
        split = _split(poly)
        if split is not None:
            core, p = split
            one_minus = UniPoly.linear(1, -1)
            while p.degree > 0 and p(Fraction(1)) == 0:
                p, _ = p.divmod(one_minus)
                beta += sign
            poly = p.to_unipoly_r().scale(core)
        polys.append(poly)
    if (alpha, beta) == (phi.alpha, phi.beta):
        return phi
    return replace(phi, alpha=alpha, beta=beta, P=polys[0], Q=polys[1])


# --- refinable root sets -------------------------------------------------------

class _Roots:
    """Isolating intervals of one function's real roots, refinable on demand."""

    def __init__(self, exact: Optional[UniPoly] = None, fn: Optional[EnclosedFunction] = None, bits: int = 64):
        self.exact = squarefree_part(exact) if exact is not None else None
        self.fn = fn
        self.bits = bits

    @classmethod
    def of(cls, poly: UniPolyR, bits: int, strip: Optional[UniPoly] = None) -> "_Roots":
        split = _split(poly)
        if split is None:
            return cls(fn=PolynomialFunction(poly), bits=bits)
        p = squarefree_part(split[1])
        if strip is not None and not strip.is_zero:
            g = poly_gcd(p, strip)
            if g.degree >= 1:
                p, _ = p.divmod(g)
        return cls(exact=p, bits=bits)

    def refine(self, box: DyadicInterval) -> Optional[DyadicInterval]:
        if box.width == 0:
            return None
        if self.exact is not None:
            lo, hi = refine_root(self.exact, box.lo, box.hi, box.width / 4)
            return DyadicInterval(lo, hi)
        return refine_sign_change(self.fn, box, self.bits)

    def is_multiple(self, box: DyadicInterval, original: UniPoly) -> bool:
        g = poly_gcd(original, original.derivative())
        return g.degree >= 1 and box.width > 0 and sturm_count(g, box.lo, box.hi) > 0


def _exact_intervals(p: UniPoly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> List[DyadicInterval]:
    if p.degree < 1:
        return []
    if lo is None and hi is None:
        pairs = real_roots(p)
    else:
        bound = p.cauchy_bound()
        pairs = isolate_roots(p, lo if lo is not None else -bound, hi if hi is not None else bound)
    return [DyadicInterval(a, b) for a, b in pairs]


@dataclass
class _Item:
    landmark: Landmark
    roots: Optional[_Roots] = None


@dataclass
class LandmarkTable:
    phi: PhiMap
    landmarks: List[Landmark] = field(default_factory=list)
    exterior_complete: bool = True
    complete: bool = True
    r_counts: List[CertifiedCount] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "landmarks": [lm.to_dict() for lm in self.landmarks],
            "exterior_complete": self.exterior_complete,
            "complete": self.complete,
            "notes": list(self.notes),
        }


def _phi_sign(phi: PhiMap, x: Fraction, bits: int, max_bits: int) -> int:
    b = bits
    while b <= max_bits:
        try:
            s = phi.evaluate(DyadicInterval.point(x), b).sign()
        except (PowOfNonpositive, ZeroDivisorUndecided):
            s = 0
        if s:
            return s
        b *= 2
    return 0


def _exact_ratio_power_is_one(num: RealExpr, den: RealExpr, m: int) -> Optional[int]:
    """+1 or -1 when (num/den)^m == 1 exactly with num/den = +-1; None otherwise."""
    if num.is_zero or den.is_zero:
        return None
    ratio = num / den
    if not ratio.is_rational:
        return None
    q = ratio.as_fraction()
    if q == 1:
        return 1
    if q == -1 and m % 2 == 0:
        return -1
    return None


def _fixed_point(phi: PhiMap, at_one: bool) -> Optional[Landmark]:
    exponent = phi.beta if at_one else phi.alpha
    tag = "1" if at_one else "0"
    where = DyadicInterval.point(Fraction(1) if at_one else Fraction(0))
    note = f"order {abs(exponent)}"
    if exponent > 0:
        return Landmark(LandmarkKind.LETTER_P, where, tag, 0, note)
    if exponent < 0:
        return Landmark(LandmarkKind.LETTER_Q, where, tag, 0, note)
    # phi is finite and nonzero there: a letter r only when phi^m is exactly 1
    x = Fraction(1) if at_one else Fraction(0)
    P, Q = phi.P.scale(phi.prefactor_sign), phi.Q
    num = sum((c * x ** i for i, c in enumerate(P.coefficients)), RealExpr.rational(0))
    den = sum((c * x ** i for i, c in enumerate(Q.coefficients)), RealExpr.rational(0))
    sign = _exact_ratio_power_is_one(num, den, phi.m)
    if sign is None:
        return None
    kind = LandmarkKind.LETTER_R_PLUS if sign > 0 else LandmarkKind.LETTER_R_MINUS
    return Landmark(kind, where, tag, sign, "endpoint value")


def _infinity(phi: PhiMap, max_bits: int) -> Optional[Landmark]:
    deg_p, deg_q = phi.degrees(max_bits)
    e_inf = phi.alpha + phi.beta + deg_p - deg_q
    note = f"order {abs(e_inf)}"
    if e_inf > 0:
        return Landmark(LandmarkKind.LETTER_Q, None, "inf", 0, note)
    if e_inf < 0:
        return Landmark(LandmarkKind.LETTER_P, None, "inf", 0, note)
    # limit of phi^m is ((-1)^beta lc(P) / lc(Q))^m
    sign = -1 if int(phi.m * phi.beta) % 2 else 1
    if phi.prefactor_sign < 0 and phi.m % 2:
        sign = -sign
    lead = phi.P.coefficients[deg_p] * sign
    if _exact_ratio_power_is_one(lead ** phi.m, phi.Q.coefficients[deg_q] ** phi.m, 1) != 1:
        return None
    # alpha + beta is an integer, so both share one denominator: a real branch exists iff m is odd
    branch = _branch_sign(True, phi.beta)
    if branch is None:
        return Landmark(LandmarkKind.LETTER_R_PLUS, None, "inf", 0, "limit at infinity, no real branch")
    leads = (phi.P.coefficients[deg_p], phi.Q.coefficients[deg_q])
    value = phi.prefactor_sign * branch * sign_of(leads[0], max_bits).as_int() * sign_of(leads[1], max_bits).as_int()
    kind = LandmarkKind.LETTER_R_MINUS if value < 0 else LandmarkKind.LETTER_R_PLUS
    return Landmark(kind, None, "inf", value, "limit at infinity")


def _branch_sign(base_negative: bool, exponent: Fraction) -> Optional[int]:
    """Sign of u^exponent on the real branch; None when u < 0 and the denominator is even."""
    if not base_negative:
        return 1
    if exponent.denominator % 2 == 0:
        return None
    return -1 if exponent.numerator % 2 else 1


def _exterior_sign(phi: PhiMap, item: "_Item", bits: int, max_depth: int) -> int:
    """Certified sign of phi at an exterior root on the real branch; 0 when there is none or it stays undecided."""
    box = item.landmark.location
    x_part = _branch_sign(box.hi <= 0, phi.alpha)
    one_minus_part = _branch_sign(box.lo >= 1, phi.beta)
    if x_part is None or one_minus_part is None:
        return 0
    for _ in range(max_depth):
        p, q = phi.P.evaluate_interval(box, bits).sign(), phi.Q.evaluate_interval(box, bits).sign()
        if p and q:
            return phi.prefactor_sign * p * q * x_part * one_minus_part
        finer = item.roots.refine(box) if item.roots is not None else None
        if finer is None:
            return 0
        box = finer
    return 0


def _power(p: UniPolyR, n: int) -> UniPolyR:
    result = UniPolyR.constant(1)
    for _ in range(n):
        result = result * p
    return result


def exterior_equation(phi: PhiMap) -> UniPolyR:
    """Polynomial whose real roots outside [0, 1] are the solutions of phi^m = 1 there."""
    m = phi.m
    a, b = int(m * phi.alpha), int(m * phi.beta)
    x, one_minus = UniPoly.x(), UniPoly.linear(1, -1)
    left = (x ** max(a, 0)) * (one_minus ** max(b, 0))
    right = (x ** max(-a, 0)) * (one_minus ** max(-b, 0))
    P = phi.P.scale(phi.prefactor_sign)
    return _power(P, m) * left - _power(phi.Q, m) * right


def _polynomial_landmarks(
    poly: UniPolyR,
    kind: LandmarkKind,
    bits: int,
    max_depth: int,
    table: LandmarkTable,
    strip: Optional[UniPoly] = None,
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
    note: str = "",
) -> List[_Item]:
    roots = _Roots.of(poly, bits, strip)
    items = []
    if roots.exact is not None:
        original = _split(poly)[1]
        for box in _exact_intervals(roots.exact, lo, hi):
            multiplicity = note or ("multiple" if roots.is_multiple(box, original) else "simple")
            items.append(_Item(Landmark(kind, box, "", 0, multiplicity), roots))
        return items
    found, undecided = isolate_polynomial_roots(poly, lo, hi, bits, max_depth)
    if undecided:
        table.complete = False
        table.notes.append(f"{len(undecided)} undecided boxes among {kind.value} roots")
    for box in found:
        items.append(_Item(Landmark(kind, box, "", 0, note or "simple"), roots))
    return items


def _separate(items: List[_Item], rounds: int) -> None:
    for _ in range(rounds):
        finite = sorted((it for it in items if not it.landmark.at_infinity), key=lambda it: it.landmark.sort_key())
        clashes = []
        for a, b in zip(finite, finite[1:]):
            A, B = a.landmark.location, b.landmark.location
            if B.lo < A.hi or (B.lo == A.hi and (A.width == 0 or B.width == 0)):
                clashes.append((a, b))
        if not clashes:
            return
        progressed = False
        for pair in clashes:
            for it in pair:
                if it.roots is None:
                    continue
                finer = it.roots.refine(it.landmark.location)
                if finer is not None and finer.width < it.landmark.location.width:
                    it.landmark = replace(it.landmark, location=finer)
                    progressed = True
        if not progressed:
            break
    raise UndecidedSeparation("landmark intervals overlap at the precision cap")


def landmark_table(
    phi: PhiMap,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
    exterior_power_cap: int = 12,
) -> LandmarkTable:
    """
    All landmarks of phi on the real projective line, separated and ordered.

    Raises:
        CommonRoot: P and Q share a root
        UndecidedSeparation: two intervals cannot be separated
    """
    max_bits = max(precision, max_precision or DEFAULT_MAX_PRECISION)
    phi = absorb_endpoint_roots(phi)
    table = LandmarkTable(phi)
    split_p, split_q = _split(phi.P), _split(phi.Q)
    exact_pq = None
    if split_p is not None and split_q is not None:
        g = poly_gcd(split_p[1], split_q[1])
        if g.degree >= 1:
            raise CommonRoot(f"P and Q share the factor {g}")
        exact_pq = split_p[1] * split_q[1]

    items: List[_Item] = []
    items += _polynomial_landmarks(phi.P, LandmarkKind.LETTER_P, precision, max_depth, table)
    items += _polynomial_landmarks(phi.Q, LandmarkKind.LETTER_Q, precision, max_depth, table)
    for fixed in (_fixed_point(phi, False), _fixed_point(phi, True), _infinity(phi, max_bits)):
        if fixed is not None:
            items.append(_Item(fixed))
    items += _polynomial_landmarks(
        critical_polynomial(phi), LandmarkKind.NONSPECIAL_CRITICAL, precision, max_depth, table, exact_pq
    )

    targets = [(1, LandmarkKind.LETTER_R_PLUS)]
    if phi.m % 2 == 0:
        targets.append((-1, LandmarkKind.LETTER_R_MINUS))
    for target, kind in targets:
        count = count_phi_solutions(phi, target, precision, max_depth, max_bits)
        table.r_counts.append(count)
        if not count.exact:
            table.complete = False
            table.notes.append(f"phi = {target} count is partial")
        fn = GenPolyFunction(phi.to_gen_poly(target))
        for box in count.root_intervals:
            items.append(_Item(Landmark(kind, box, "", target, "simple"), _Roots(fn=fn, bits=precision)))

    exterior: List[_Item] = []
    if phi.m <= exterior_power_cap:
        equation = exterior_equation(phi)
        bound = root_bound(equation, precision)
        if bound is None:
            table.exterior_complete = False
            table.notes.append("exterior equation has an unsigned leading coefficient")
        else:
            for lo, hi in ((-bound, Fraction(0)), (Fraction(1), bound)):
                exterior += _polynomial_landmarks(
                    equation, LandmarkKind.LETTER_R_PLUS, precision, max_depth, table, exact_pq, lo, hi, "exterior"
                )
    else:
        table.exterior_complete = False
        table.notes.append(f"exterior letters r skipped: m = {phi.m} exceeds {exterior_power_cap}")
        logger.warning("exterior landmark set incomplete for m = %d", phi.m)

    items += exterior
    _separate(items, max_depth)
    for it in exterior:
        sign = _exterior_sign(phi, it, precision, max_depth)
        kind = LandmarkKind.LETTER_R_MINUS if sign < 0 else LandmarkKind.LETTER_R_PLUS
        it.landmark = replace(it.landmark, kind=kind, phi_sign_at=sign)
    landmarks = sorted((it.landmark for it in items), key=lambda lm: lm.sort_key())
    for i, lm in enumerate(landmarks):
        if lm.kind is LandmarkKind.NONSPECIAL_CRITICAL and lm.interior:
            landmarks[i] = replace(lm, phi_sign_at=_phi_sign(phi, lm.location.midpoint, precision, max_bits))
    table.landmarks = landmarks
    logger.debug("landmarks: %s", [lm.kind.value for lm in landmarks])
    return table


def classify_landmarks(
    phi: PhiMap,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
    exterior_power_cap: int = 12,
) -> List[Landmark]:
    """Ordered landmark list of phi along the real projective line."""
    return landmark_table(phi, precision, max_depth, max_precision, exterior_power_cap).landmarks


# --- counts on (0, 1) ------------------------------------------------------------

def useful_positive(phi: PhiMap, landmarks: List[Landmark]) -> List[Landmark]:
    """Interior non-special critical points with a letter r next to them and phi > 0 there."""
    found = []
    n = len(landmarks)
    for i, lm in enumerate(landmarks):
        if lm.kind is not LandmarkKind.NONSPECIAL_CRITICAL or not lm.interior:
            continue
        before, after = landmarks[i - 1], landmarks[(i + 1) % n]
        if not (before.is_letter_r or after.is_letter_r):
            continue
        if lm.phi_sign_at == 0:
            raise UndecidedSign(f"sign of phi at the critical point {lm.location}")
        if lm.phi_sign_at > 0:
            found.append(lm)
    return found


def sign_pattern(
    phi: PhiMap, landmarks: List[Landmark], precision: int = 64, max_precision: int = DEFAULT_MAX_PRECISION
) -> List[int]:
    """Sign of phi on each open subinterval of (0, 1) cut by interior roots and poles."""
    cuts = [lm.location for lm in landmarks if lm.is_special and lm.interior]
    edges = [Fraction(0)] + [x for box in cuts for x in (box.lo, box.hi)] + [Fraction(1)]
    signs = []
    for a, b in zip(edges[::2], edges[1::2]):
        sign = 0
        for j in (4, 3, 5, 2, 6, 1, 7):
            sign = _phi_sign(phi, a + (b - a) * j / 8, precision, max_precision)
            if sign:
                break
        if not sign:
            raise UndecidedSign(f"sign of phi on ({a}, {b})")
        signs.append(sign)
    return signs


def _interior_special(landmarks: List[Landmark]) -> int:
    return sum(1 for lm in landmarks if lm.is_special and lm.interior)


def _positive_runs(signs: List[int]) -> int:
    return sum(1 for s in signs if s > 0)


def flat_plus(
    phi: PhiMap, landmarks: List[Landmark], precision: int = 64, max_precision: int = DEFAULT_MAX_PRECISION
) -> Tuple[int, int]:
    """(flat_plus, S0): positive branches of phi on (0, 1), and its roots plus poles there."""
    signs = sign_pattern(phi, landmarks, precision, max_precision)
    return _positive_runs(signs), _interior_special(landmarks)


# --- report ------------------------------------------------------------------------

@dataclass
class PhiReport:
    landmarks: List[Landmark] = field(default_factory=list)
    S0: int = 0
    flat: int = 0
    flat_plus: int = 0
    useful_positive: List[Landmark] = field(default_factory=list)
    N: Optional[CertifiedCount] = None
    bound_phi: Optional[int] = None
    critical_count: int = 0
    window_applicable: bool = False
    exterior_complete: bool = True
    checks: List[InequalityCheck] = field(default_factory=list)
    status: CountStatus = CountStatus.EXACT
    notes: List[str] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)

    @property
    def violations(self) -> List[str]:
        return [f"{c.name}: {c.lhs} > {c.rhs}" for c in self.checks if c.status is CheckStatus.VIOLATED]

    def to_dict(self):
        return {
            "landmarks": [lm.to_dict() for lm in self.landmarks],
            "S0": self.S0,
            "flat": self.flat,
            "flat_plus": self.flat_plus,
            "useful_positive": [lm.to_dict() for lm in self.useful_positive],
            "N": self.N.to_dict() if self.N is not None else None,
            "bound_phi": self.bound_phi,
            "critical_count": self.critical_count,
            "window_applicable": self.window_applicable,
            "exterior_complete": self.exterior_complete,
            "checks": [c.to_dict() for c in self.checks],
            "violations": self.violations,
            "status": self.status.value,
            "notes": list(self.notes),
            "errors": list(self.errors),
        }


def _bounded(name: str, lhs: int, rhs: int, decided: bool) -> InequalityCheck:
    if lhs <= rhs:
        status = CheckStatus.HOLDS if decided else CheckStatus.UNDECIDED
    else:
        status = CheckStatus.VIOLATED if decided else CheckStatus.UNDECIDED
    return InequalityCheck(name, lhs, rhs, status)


def analyze_phi(
    phi: PhiMap,
    precision: int = 64,
    max_depth: int = 64,
    max_precision: Optional[int] = None,
    exterior_power_cap: int = 12,
    strict: bool = False,
) -> PhiReport:
    """
    Landmarks, flat_plus, useful positive critical points and the inequality checks.

    Failures to separate or sign are reported, not raised; the report is
    then PARTIAL.
    """
    max_bits = max(precision, max_precision or DEFAULT_MAX_PRECISION)
    report = PhiReport()
    try:
        report.bound_phi = bound_phi(phi, max_bits)
        table = landmark_table(phi, precision, max_depth, max_bits, exterior_power_cap)
    except FewnomialError as e:
        report.errors.append(f"landmarks failed: {type(e).__name__}: {str(e)}")
        report.status = CountStatus.PARTIAL
        return report

    report.landmarks = table.landmarks
    report.exterior_complete = table.exterior_complete
    report.notes = list(table.notes)
    report.N = table.r_counts[0]
    decided = table.complete
    report.critical_count = sum(1 for lm in table.landmarks if lm.kind is LandmarkKind.NONSPECIAL_CRITICAL)
    deg_p, deg_q = table.phi.degrees(max_bits)
    report.checks.append(
        _bounded("critical points <= deg P + deg Q + 1", report.critical_count, max(deg_p, 0) + max(deg_q, 0) + 1, decided)
    )
    report.checks.append(
        InequalityCheck("N <= deg P + deg Q + 2", report.N.count, report.bound_phi, compare(report.N, report.bound_phi))
    )

    try:
        signs = sign_pattern(table.phi, table.landmarks, precision, max_bits)
        report.flat_plus, report.S0 = _positive_runs(signs), _interior_special(table.landmarks)
        report.flat = 1 + sum(
            1 for lm in table.landmarks if lm.kind is LandmarkKind.LETTER_Q and lm.interior
        )
        report.window_applicable = all(a != b for a, b in zip(signs, signs[1:]))
        if report.window_applicable:
            half = report.S0 // 2
            report.checks.append(_bounded("floor(S0/2) <= flat_plus", half, report.flat_plus, decided))
            report.checks.append(_bounded("flat_plus <= floor(S0/2) + 1", report.flat_plus, half + 1, decided))
        report.useful_positive = useful_positive(table.phi, table.landmarks)
        rhs = report.flat_plus + len(report.useful_positive)
        report.checks.append(
            InequalityCheck("N <= flat_plus + |U|", report.N.count, rhs, compare(report.N, rhs, decided))
        )
    except UndecidedSign as e:
        report.errors.append(f"sign analysis failed: {str(e)}")
        decided = False

    if not (decided and report.N.exact):
        report.status = CountStatus.PARTIAL
        logger.warning("phi analysis downgraded to partial: %s", report.notes + report.errors)
    if report.violations:
        logger.error("theorem violation in phi analysis: %s", report.to_dict())
        if strict:
            raise TheoremViolation("; ".join(report.violations))
    return report
