import random
from fractions import Fraction

import pytest

from algebra.dyadic import DyadicInterval, round_dyadic
from algebra.errors import PowOfNonpositive, ZeroDivisorUndecided
from algebra.real_expr import RealExpr, Sign, eval_interval, radical, sign_of


def test_round_dyadic_brackets_value():
    q = Fraction(1, 3)
    lo, hi = round_dyadic(q, 20, False), round_dyadic(q, 20, True)
    assert lo < q < hi
    assert hi - lo <= Fraction(1, 2 ** 20)


def test_exact_arithmetic_without_bits():
    a = DyadicInterval(Fraction(1, 2), Fraction(3, 4))
    b = DyadicInterval(Fraction(-1, 4), Fraction(1, 8))
    assert a.add(b) == DyadicInterval(Fraction(1, 4), Fraction(7, 8))
    assert a.mul(b) == DyadicInterval(Fraction(-3, 16), Fraction(3, 32))


def test_division_by_interval_containing_zero():
    with pytest.raises(ZeroDivisorUndecided):
        DyadicInterval(Fraction(1), Fraction(2)).div(DyadicInterval(Fraction(-1), Fraction(1)))


def test_pow_rat_encloses_square_root():
    iv = DyadicInterval.point(Fraction(2)).pow_rat(Fraction(1, 2), 40)
    assert iv.lo ** 2 <= 2 <= iv.hi ** 2
    with pytest.raises(PowOfNonpositive):
        DyadicInterval(Fraction(-1), Fraction(1)).pow_rat(Fraction(1, 2), 40)


def test_rational_leaf():
    iv = eval_interval(RealExpr.rational(Fraction(44, 31)), 16)
    assert iv.contains(Fraction(44, 31))
    assert iv.width <= Fraction(2, 2 ** 12)


def test_square_root_of_two():
    iv = eval_interval(radical(2, Fraction(1, 2)), 30)
    assert iv.lo ** 2 <= 2 <= iv.hi ** 2
    assert iv.width <= Fraction(2, 2 ** 26)


def test_product_folds_to_one():
    e = RealExpr.rational(Fraction(3, 2)) * Fraction(2, 3)
    assert eval_interval(e, 32).contains(Fraction(1))


def test_signs():
    assert sign_of(RealExpr.rational(Fraction(44, 31)) - 1) is Sign.POSITIVE
    assert sign_of(RealExpr.rational(Fraction(-1, 7))) is Sign.NEGATIVE
    root = radical(2, Fraction(1, 2))
    # exactly zero: no sign may be claimed
    assert sign_of(root * root - 2, 256) is Sign.UNDECIDED


def test_power_of_negative_is_rejected():
    with pytest.raises(PowOfNonpositive):
        radical(-2, Fraction(1, 2))
    with pytest.raises(PowOfNonpositive):
        (radical(2, Fraction(1, 2)) - 2) ** Fraction(1, 3)


def _positive_expr(rng: random.Random, depth: int) -> RealExpr:
    if depth == 0:
        return RealExpr.rational(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
    a, b = _positive_expr(rng, depth - 1), _positive_expr(rng, depth - 1)
    op = rng.choice(("add", "mul", "div", "pow"))
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    return (a + b) ** Fraction(1, rng.choice((2, 3)))


def test_refinement_is_nested():
    rng = random.Random(7)
    for _ in range(60):
        e = _positive_expr(rng, rng.randint(1, 4)) - RealExpr.rational(Fraction(rng.randint(0, 9), 4))
        coarse, middle, fine = eval_interval(e, 16), eval_interval(e, 32), eval_interval(e, 64)
        assert coarse.lo <= middle.lo <= fine.lo
        assert fine.hi <= middle.hi <= coarse.hi
        assert coarse.contains(fine.midpoint)
