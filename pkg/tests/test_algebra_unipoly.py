import random
from fractions import Fraction

import pytest

from algebra.errors import NotSquarefree
from algebra.unipoly import UniPoly, isolate_roots, poly_gcd, squarefree_part, sturm_count

X2_MINUS_2 = UniPoly((Fraction(-2), Fraction(0), Fraction(1)))
# (x - 1/2)(x - 1/3)
TWO_ROOTS = UniPoly.linear(Fraction(-1, 2), 1) * UniPoly.linear(Fraction(-1, 3), 1)


def test_sturm_count():
    assert sturm_count(X2_MINUS_2, Fraction(0), Fraction(2)) == 1
    assert sturm_count(TWO_ROOTS, Fraction(0), Fraction(1)) == 2
    assert sturm_count(UniPoly((Fraction(1), Fraction(0), Fraction(1))), Fraction(-10), Fraction(10)) == 0


def test_sturm_count_is_half_open():
    p = UniPoly.linear(-1, 1)
    assert sturm_count(p, Fraction(0), Fraction(1)) == 1
    assert sturm_count(p, Fraction(1), Fraction(2)) == 0


def test_isolate_with_width():
    ((lo, hi),) = isolate_roots(X2_MINUS_2, Fraction(0), Fraction(2), Fraction(1, 8))
    assert hi - lo <= Fraction(1, 8)
    assert lo * lo < 2 < hi * hi


def test_exact_roots_get_open_boxes_inside_the_bounds():
    p = UniPoly.x() * UniPoly.linear(-1, 1) * UniPoly.linear(-2, 1)
    ((lo, hi),) = isolate_roots(p, Fraction(0), Fraction(2))
    assert 0 < lo < 1 < hi < 2
    assert p(lo) != 0 and p(hi) != 0
    boxes = isolate_roots(p, Fraction(-1), Fraction(3), Fraction(1, 16))
    assert [lo < r < hi for (lo, hi), r in zip(boxes, (0, 1, 2))] == [True] * 3
    assert all(hi - lo <= Fraction(1, 16) for lo, hi in boxes)
    assert all(left[1] <= right[0] for left, right in zip(boxes, boxes[1:]))


def test_isolate_two_roots():
    (a, b), (c, d) = isolate_roots(TWO_ROOTS, Fraction(0), Fraction(1))
    assert a < Fraction(1, 3) < b <= c < Fraction(1, 2) < d


def test_triple_root_is_not_squarefree():
    with pytest.raises(NotSquarefree):
        isolate_roots(UniPoly((0, 0, 0, 1)), Fraction(-1), Fraction(1))


def test_gcd_and_squarefree_part():
    p = TWO_ROOTS * UniPoly.linear(Fraction(-1, 2), 1)
    assert poly_gcd(p, p.derivative()).monic() == UniPoly.linear(Fraction(-1, 2), 1)
    assert squarefree_part(p).degree == 2


def test_cauchy_bound_exceeds_roots():
    p = UniPoly.linear(-100, 1) * UniPoly.linear(3, 1)
    bound = p.cauchy_bound()
    assert bound > 100
    assert bound.denominator == 1 and bound.numerator & (bound.numerator - 1) == 0


def test_sturm_agrees_with_isolation():
    rng = random.Random(3)
    for _ in range(80):
        degree = rng.randint(1, 9)
        coefficients = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(degree)] + [Fraction(1)]
        p = squarefree_part(UniPoly(tuple(coefficients)))
        if p.degree < 1:
            continue
        bound = p.cauchy_bound()
        assert sturm_count(p, -bound, bound) == len(isolate_roots(p, -bound, bound))
